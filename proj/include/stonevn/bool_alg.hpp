#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stonevn/bool_space.hpp"
#include "stonevn/errors.hpp"
#include "stonevn/report.hpp"

namespace stonevn {

// A finite Boolean algebra, presented by its atoms. Elements are atom
// subsets; meet/join/complement are intersection/union/set complement. The
// one-element algebra (0 = 1, no atoms) only arises as the clopen algebra of
// the empty space and is flagged as such: handing it around further — in
// particular asking for its Stone space — is almost always an input mistake
// and is rejected.
struct BoolAlg {
    std::vector<std::string> atoms;
    bool degenerate_from_empty_space = false;

    BoolAlg() = default;
    explicit BoolAlg(std::vector<std::string> atom_names);

    std::size_t atom_count() const { return atoms.size(); }
    std::optional<std::size_t> atom_index(std::string_view name) const;

    bool operator==(const BoolAlg& other) const { return atoms == other.atoms; }
    bool operator!=(const BoolAlg& other) const { return !(*this == other); }
};

struct BAElement {
    BoolAlg owner;
    std::vector<bool> member; // one flag per atom

    bool operator==(const BAElement& other) const {
        return owner == other.owner && member == other.member;
    }
    bool operator!=(const BAElement& other) const { return !(*this == other); }

    bool is_bottom() const;
    bool is_top() const;
};

BAElement bottom(const BoolAlg& algebra);
BAElement top(const BoolAlg& algebra);
BAElement atom_element(const BoolAlg& algebra, std::size_t atom);
BAElement element_of(const BoolAlg& algebra, const std::vector<std::string>& atom_names);
BAElement element_mask(const BoolAlg& algebra, std::vector<bool> member);

BAElement meet(const BAElement& x, const BAElement& y);
BAElement join(const BAElement& x, const BAElement& y);
BAElement complement(const BAElement& x);
bool leq(const BAElement& x, const BAElement& y); // x <= y in the algebra order

// All 2^atoms elements in subset-bitmask order (first atom = low bit).
std::vector<BAElement> all_elements(const BoolAlg& algebra, std::size_t max_atoms = 20);

// Homomorphism of Boolean algebras. Finite case: every hom is determined by
// a map of atoms in the reverse direction, sending each codomain atom to the
// unique domain atom below its h-image... more plainly, h(b) contains a
// codomain atom t iff dual_atom_map[t] lies in b.
struct BAHom {
    BoolAlg domain;
    BoolAlg codomain;
    std::vector<std::size_t> dual_atom_map; // one domain atom per codomain atom

    BAHom(BoolAlg dom, BoolAlg cod, std::vector<std::size_t> dual);

    static BAHom identity(const BoolAlg& algebra);

    BAElement operator()(const BAElement& x) const;

    bool operator==(const BAHom& other) const {
        return domain == other.domain && codomain == other.codomain &&
               dual_atom_map == other.dual_atom_map;
    }
    bool operator!=(const BAHom& other) const { return !(*this == other); }
};

// g after f.
BAHom compose(const BAHom& g, const BAHom& f);

// Exhaustively verifies the hom laws for h (preserves meet, join,
// complement, bottom, top) over all element pairs. Exponential; capped.
CheckReport hom_laws_check(const BAHom& h, std::size_t max_atoms = 10);

// An ultrafilter of a finite Boolean algebra: principal at an atom. Kept as
// the atom's index plus the membership test.
struct Ultrafilter {
    BoolAlg owner;
    std::size_t atom;

    bool contains(const BAElement& x) const;
    std::string name() const { return owner.atoms[atom]; }
};

// One ultrafilter per atom, in atom order.
std::vector<Ultrafilter> ultrafilters(const BoolAlg& algebra, std::size_t max_atoms = 20);

// The Stone space: ultrafilters, one point per atom, named after the atom.
// Rejects the degenerate one-element algebra — it has no ultrafilters, and
// reaching for its Stone space is treated as an input mistake.
FiniteBoolSpace stone(const BoolAlg& algebra);

// Stone is contravariant: a hom B -> B' pulls ultrafilters of B' back to
// ultrafilters of B; on principal ultrafilters that is exactly the dual atom
// map.
ContinuousMap stone_map(const BAHom& h);

// The clopen algebra of a finite discrete space is its full powerset, one
// atom per point. The empty space yields the flagged degenerate algebra.
BoolAlg clopen(const FiniteBoolSpace& space);

// Clopen is contravariant: preimage along f.
BAHom clopen_map(const ContinuousMap& f);

// Canonical comparison isos of finite Stone duality, both name-preserving:
// atoms of B against points of stone(B), and elements of B against clopens.
// The reports verify bijectivity and operation preservation exhaustively.
CheckReport stone_roundtrip_algebra_check(const BoolAlg& algebra, std::size_t max_atoms = 12);
CheckReport stone_roundtrip_space_check(const FiniteBoolSpace& space, std::size_t max_points = 12);

} // namespace stonevn
