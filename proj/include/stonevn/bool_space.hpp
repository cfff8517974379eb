#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stonevn/report.hpp"
#include "stonevn/rng.hpp"

namespace stonevn {

// A finite Boolean (= Stone) space: finite set with the discrete topology,
// so every subset is clopen and continuity of maps is automatic. Point order
// is part of the value — it fixes coordinate order everywhere downstream.
struct FiniteBoolSpace {
    std::vector<std::string> points;

    FiniteBoolSpace() = default; // empty space
    explicit FiniteBoolSpace(std::vector<std::string> names);

    std::size_t size() const { return points.size(); }
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const FiniteBoolSpace& other) const { return points == other.points; }
    bool operator!=(const FiniteBoolSpace& other) const { return !(*this == other); }
};

struct ContinuousMap {
    FiniteBoolSpace domain;
    FiniteBoolSpace codomain;
    std::vector<std::size_t> point_map; // one codomain index per domain point

    ContinuousMap(FiniteBoolSpace dom, FiniteBoolSpace cod, std::vector<std::size_t> map);

    static ContinuousMap identity(const FiniteBoolSpace& space);

    std::size_t operator()(std::size_t i) const;
    bool is_bijective() const;

    bool operator==(const ContinuousMap& other) const {
        return domain == other.domain && codomain == other.codomain && point_map == other.point_map;
    }
    bool operator!=(const ContinuousMap& other) const { return !(*this == other); }
};

// g after f.
ContinuousMap compose(const ContinuousMap& g, const ContinuousMap& f);

// An equivalence relation on a space, stored as its partition into blocks.
// Canonical form: block members sorted by point index, blocks sorted by
// least member. Two relations on the same ground set are equal iff their
// canonical forms coincide.
struct EquivRelation {
    std::size_t ground_size = 0;
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> block_of; // point index -> block index

    static EquivRelation from_blocks(std::size_t ground_size,
                                     std::vector<std::vector<std::size_t>> blocks);
    static EquivRelation discrete(std::size_t ground_size); // finest: singleton blocks
    static EquivRelation total(std::size_t ground_size);    // coarsest: one block

    std::size_t block_count() const { return blocks.size(); }
    bool related(std::size_t x, std::size_t y) const { return block_of[x] == block_of[y]; }

    // True when this relation is contained in `coarser` as a set of pairs,
    // i.e. every block here sits inside one block of `coarser`.
    bool refines(const EquivRelation& coarser) const;

    // Restricted-growth normal form; equal relations have equal keys.
    std::vector<std::size_t> rgs_key() const;

    bool operator==(const EquivRelation& other) const {
        return ground_size == other.ground_size && block_of == other.block_of;
    }
    bool operator!=(const EquivRelation& other) const { return !(*this == other); }
};

// All equivalence relations on an n-point ground set, in lexicographic
// restricted-growth-string order. Counts are the Bell numbers; hard-capped
// at n = 8 (Bell(8) = 4140).
std::vector<EquivRelation> all_equiv_relations(std::size_t ground_size);

struct Quotient {
    FiniteBoolSpace space;     // one point per block, named by joining members with '|'
    ContinuousMap projection;  // x |-> [x]
};

Quotient quotient(const FiniteBoolSpace& space, const EquivRelation& relation);

// The connecting map X/finer -> X/coarser. Contract error unless finer
// actually refines coarser.
ContinuousMap transition(const FiniteBoolSpace& space, const EquivRelation& finer,
                         const EquivRelation& coarser);

// Pull an equivalence relation on the codomain of f back along f:
// x ~ y iff f(x) ~' f(y).
EquivRelation pullback_relation(const ContinuousMap& f, const EquivRelation& codomain_relation);

// The map X/R_f -> X'/R' induced on quotients by f, where R_f is the
// pullback of R'. Injective by construction (distinct R_f-blocks have
// distinct images); verified, violation is a ContractError.
ContinuousMap induced_quotient_map(const ContinuousMap& f, const EquivRelation& codomain_relation);

// ---------------------------------------------------------------------------
// Inverse systems and their limits.
// ---------------------------------------------------------------------------

// A finite diagram of finite spaces. Arrows are stored explicitly; the index
// order relation is whatever the arrows generate. validate() enforces that
// any two stored/composite paths between the same pair of levels agree and
// that any stored self-arrow is the identity.
struct InverseSystem {
    struct Arrow {
        std::size_t from, to; // levels[from] -> levels[to]
        ContinuousMap map;
    };

    std::vector<FiniteBoolSpace> levels;
    std::vector<Arrow> arrows;

    void add_arrow(std::size_t from, std::size_t to, ContinuousMap map);
    void validate() const; // ContractError with a witness triple on incoherence
};

// One point of the limit: a coherent choice of a point in every level.
struct LimitPoint {
    std::vector<std::size_t> components; // one point index per level
};

struct LimitResult {
    FiniteBoolSpace space;                   // t0, t1, ... in canonical thread order
    std::vector<LimitPoint> threads;
    std::vector<ContinuousMap> projections;  // limit -> levels[i], one per level
};

// Enumerates every coherent thread, in lexicographic order by level order
// then point order. Validates the system first.
LimitResult limit(const InverseSystem& system);

// ---------------------------------------------------------------------------
// The profinite presentation of a finite space: the inverse system of all
// its quotients, and the comparison map x |-> ([x]_R)_R into its limit.
// ---------------------------------------------------------------------------

struct PartitionSystem {
    InverseSystem system;                  // one level per relation, fully connected
    std::vector<EquivRelation> relations;  // relations[i] belongs to system.levels[i]
};

// Uses the full partition lattice for |X| <= full_lattice_bound and a seeded
// sample (always containing the discrete and total relations) of
// sample_size relations above it. Resource error past max_points.
PartitionSystem partition_system(const FiniteBoolSpace& space, std::uint64_t seed = 0,
                                 std::size_t max_points = 20,
                                 std::size_t full_lattice_bound = 6,
                                 std::size_t sample_size = 200);

struct ProfiniteEmbedding {
    PartitionSystem system;
    LimitResult limit;
    ContinuousMap embedding;   // X -> limit.space
    CheckReport homeomorphism; // bijectivity evidence (discrete topology: that's all)
};

ProfiniteEmbedding profinite_embedding(const FiniteBoolSpace& space, std::uint64_t seed = 0,
                                       std::size_t max_points = 20);

// The induced map between profinite presentations: for f : X -> X', the
// unique map on limits whose level-R' component is the induced quotient map
// on the pullback relation. Requires the full lattice on both sides.
struct LimitMap {
    ProfiniteEmbedding source;
    ProfiniteEmbedding target;
    ContinuousMap map;        // source.limit.space -> target.limit.space
    CheckReport coherence;    // the defining squares, one per target relation
};

LimitMap induced_limit_map(const ContinuousMap& f);

} // namespace stonevn
