#pragma once

#include <functional>
#include <string>
#include <vector>

#include "stonevn/bool_alg.hpp"
#include "stonevn/product_ring.hpp"

namespace stonevn {

// ---------------------------------------------------------------------------
// The Boolean algebra of idempotents of a product ring, and the comparison
// between it and the clopen algebra of the spectrum.
//
// Ring-side operations on idempotents:
//   e and e'  =  e * e'
//   e or  e'  =  e + e' - e * e'
//   not e     =  1 - e
// These correspond across the support bijection to intersection, union and
// complement of atom subsets. The join formula is the one every check below
// consumes through an injectable parameter so the verification pipeline can
// demonstrate that breaking it is actually detected.
// ---------------------------------------------------------------------------

template <ScalarField K>
using RingJoinFn =
    std::function<RingElement<K>(const RingElement<K>&, const RingElement<K>&)>;

template <ScalarField K>
RingElement<K> ring_meet(const RingElement<K>& e, const RingElement<K>& f) {
    return e * f;
}

template <ScalarField K>
RingElement<K> ring_join(const RingElement<K>& e, const RingElement<K>& f) {
    return e + f - e * f;
}

template <ScalarField K>
RingElement<K> ring_complement(const RingElement<K>& e) {
    return e.owner.one() - e;
}

template <ScalarField K>
RingJoinFn<K> default_ring_join() {
    return [](const RingElement<K>& a, const RingElement<K>& b) { return ring_join(a, b); };
}

// The idempotent algebra of a ring: one atom per ring point, an idempotent
// corresponding to the subset it supports.
template <ScalarField K>
BoolAlg idempotent_algebra(const ProductRing<K>& ring) {
    return BoolAlg(ring.points);
}

template <ScalarField K>
BAElement support_element(const Idempotent<K>& e) {
    return element_mask(idempotent_algebra(e.value.owner), e.support());
}

template <ScalarField K>
Idempotent<K> indicator_idempotent(const ProductRing<K>& ring, const BAElement& b) {
    if (b.owner != idempotent_algebra(ring))
        throw ContractError("element does not belong to this ring's idempotent algebra");
    return Idempotent<K>{ring.indicator(b.member)};
}

// Restriction of a ring hom to idempotents, read through the support
// bijections on both sides. The dual atom map is the hom's dual point map.
template <ScalarField K>
BAHom restrict_to_idempotents(const RingHom<K>& f) {
    return BAHom(idempotent_algebra(f.domain), idempotent_algebra(f.codomain), f.dual_map);
}

// Verifies that the support bijection carries the ring-side operations to
// the set-side operations, elementwise and exactly: the ring-side result
// must literally equal the indicator of the set-side result (support
// equality alone would let a non-idempotent slip through). Exhaustive over
// all idempotent pairs.
template <ScalarField K>
CheckReport idempotent_dictionary_check(const ProductRing<K>& ring,
                                        const RingJoinFn<K>& join_fn = default_ring_join<K>(),
                                        std::size_t max_points = 20) {
    CheckReport r("ring operations on idempotents match set operations on supports");
    const BoolAlg algebra = idempotent_algebra(ring);
    const auto es = idempotents(ring, max_points);
    for (const auto& e : es) {
        const BAElement be = support_element(e);
        r.require_lazy(ring_complement(e.value) == ring.indicator(complement(be).member),
                       [] { return std::string("complement dictionary fails"); });
        for (const auto& f : es) {
            const BAElement bf = support_element(f);
            r.require_lazy(ring_meet(e.value, f.value) == ring.indicator(meet(be, bf).member),
                           [] { return std::string("meet dictionary fails"); });
            r.require_lazy(join_fn(e.value, f.value) == ring.indicator(join(be, bf).member),
                           [] { return std::string("join dictionary fails"); });
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// The comparison map from the idempotent algebra to the clopen algebra of
// the spectrum: an idempotent goes to its basic open set, which equals its
// support. Its inverse takes a clopen to its indicator idempotent.
// ---------------------------------------------------------------------------

template <ScalarField K>
BAElement clopen_of_idempotent(const Idempotent<K>& e) {
    return element_mask(clopen(spectrum(e.value.owner)), support_clopen(e.value));
}

template <ScalarField K>
Idempotent<K> idempotent_of_clopen(const ProductRing<K>& ring, const BAElement& c) {
    if (c.owner != clopen(spectrum(ring)))
        throw ContractError("clopen does not belong to this ring's spectrum");
    return Idempotent<K>{ring.indicator(c.member)};
}

// Exhaustive verification that the comparison is an isomorphism of Boolean
// algebras: bijective, sends the ring-side operations to set operations,
// fixes bottom and top, and sends exactly the units to the whole spectrum.
template <ScalarField K>
CheckReport clopen_spectrum_iso_check(const ProductRing<K>& ring,
                                      const RingJoinFn<K>& join_fn = default_ring_join<K>(),
                                      std::size_t max_points = 20) {
    CheckReport r("idempotents against clopens of the spectrum");
    const auto es = idempotents(ring, max_points);
    const BoolAlg cl = clopen(spectrum(ring));

    // Injectivity and surjectivity by counting distinct images against 2^|S|.
    std::vector<std::vector<bool>> images;
    images.reserve(es.size());
    for (const auto& e : es) images.push_back(clopen_of_idempotent(e).member);
    std::sort(images.begin(), images.end());
    r.require(std::adjacent_find(images.begin(), images.end()) == images.end(),
              "two idempotents share a basic open set");
    r.require(images.size() == (std::size_t{1} << ring.size()),
              "image does not exhaust the clopens");

    // Round trip both ways.
    for (const auto& e : es) {
        r.require_lazy(idempotent_of_clopen(ring, clopen_of_idempotent(e)) == e,
                       [] { return std::string("inverse fails on an idempotent"); });
    }

    // Operations, elementwise and exactly.
    for (const auto& e : es) {
        const BAElement ce = clopen_of_idempotent(e);
        {
            const RingElement<K> rc = ring_complement(e.value);
            r.require_lazy(rc == ring.indicator(complement(ce).member) &&
                               clopen_of_idempotent(Idempotent<K>::of(rc)) == complement(ce),
                           [] { return std::string("comparison breaks complements"); });
        }
        for (const auto& f : es) {
            const BAElement cf = clopen_of_idempotent(f);
            {
                const RingElement<K> rm = ring_meet(e.value, f.value);
                r.require_lazy(rm == ring.indicator(meet(ce, cf).member),
                               [] { return std::string("comparison breaks meets"); });
            }
            {
                const RingElement<K> rj = join_fn(e.value, f.value);
                r.require_lazy(rj == ring.indicator(join(ce, cf).member),
                               [] { return std::string("comparison breaks joins"); });
            }
        }
    }

    // The full spectrum is hit exactly by the units among idempotents (only
    // the top idempotent is a unit).
    for (const auto& e : es) {
        const bool full = clopen_of_idempotent(e).is_top();
        r.require_lazy(full == is_unit(e.value),
                       [] { return std::string("basic open set is everything but the "
                                               "idempotent is not a unit (or vice versa)"); });
    }
    return r;
}

// Naturality of the comparison in the ring: for f : A -> A', pulling a basic
// open set back along the spectrum map equals taking the basic open set of
// the transported idempotent. Also re-validates, against the supplied join,
// that both idempotent algebras are closed under their ring-side join — the
// naturality statement quantifies over that structure.
template <ScalarField K>
CheckReport clopen_spectrum_naturality_check(const RingHom<K>& f,
                                             const RingJoinFn<K>& join_fn = default_ring_join<K>(),
                                             std::size_t max_points = 20) {
    CheckReport r("naturality of the clopen-spectrum comparison");
    const auto es = idempotents(f.domain, max_points);
    const BAHom pullback = clopen_map(spectrum_map(f));
    for (const auto& e : es) {
        // Idempotents transport along f by plain application.
        const Idempotent<K> fe = Idempotent<K>::of(f(e.value));
        r.require_lazy(pullback(clopen_of_idempotent(e)) == clopen_of_idempotent(fe), [&] {
            return "square fails at an idempotent of the domain ring";
        });
    }
    // Join-closure of both sides under the ring-side join in play.
    const auto closed_under_join = [&](const ProductRing<K>& ring) {
        const auto ids = idempotents(ring, max_points);
        for (const auto& a : ids)
            for (const auto& b : ids) {
                const RingElement<K> j = join_fn(a.value, b.value);
                if (!(j * j == j)) return false;
            }
        return true;
    };
    r.require(closed_under_join(f.domain), "domain idempotents not closed under join");
    r.require(closed_under_join(f.codomain), "codomain idempotents not closed under join");
    return r;
}

} // namespace stonevn
