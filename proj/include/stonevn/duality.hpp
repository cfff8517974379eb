#pragma once

#include <map>
#include <string>
#include <vector>

#include "stonevn/bool_alg.hpp"
#include "stonevn/bool_space.hpp"
#include "stonevn/idempotent_algebra.hpp"
#include "stonevn/product_ring.hpp"

namespace stonevn {

// ---------------------------------------------------------------------------
// From spaces to rings: the ring of K-valued functions on a finite space is
// the product of one copy of K per point. Contravariantly, precomposition
// with a continuous map is a ring hom whose dual point map is the map
// itself. The composite from algebras goes through the Stone space.
// ---------------------------------------------------------------------------

template <ScalarField K>
ProductRing<K> function_ring(const FiniteBoolSpace& space) {
    return ProductRing<K>(space.points);
}

template <ScalarField K>
RingHom<K> function_ring_map(const ContinuousMap& f) {
    // Precomposition reverses direction: functions on the codomain become
    // functions on the domain.
    return RingHom<K>(function_ring<K>(f.codomain), function_ring<K>(f.domain), f.point_map);
}

template <ScalarField K>
ProductRing<K> function_ring_of_algebra(const BoolAlg& algebra) {
    return function_ring<K>(stone(algebra));
}

template <ScalarField K>
RingHom<K> function_ring_of_algebra_map(const BAHom& h) {
    // Stone reverses, the function ring reverses again: the composite is
    // covariant, with dual point map the dual atom map of h.
    return function_ring_map<K>(stone_map(h));
}

// ---------------------------------------------------------------------------
// Space recovery: points against primes of the function ring.
// ---------------------------------------------------------------------------

// The canonical comparison X -> Spec(K^X): a point goes to the prime of
// functions vanishing at it. Both carry the same names, so the underlying
// map is the name identity; what the report certifies is that it is a
// bijection (homeomorphism: finite discrete on both sides).
template <ScalarField K>
ContinuousMap space_to_spectrum(const FiniteBoolSpace& space) {
    const FiniteBoolSpace spec = spectrum(function_ring<K>(space));
    std::vector<std::size_t> pm(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
        const auto idx = spec.index_of(space.points[x]);
        if (!idx) throw ContractError("point lost between space and spectrum"); // unreachable
        pm[x] = *idx;
    }
    return ContinuousMap(space, spec, std::move(pm));
}

template <ScalarField K>
NaturalIsoReport::ObjectCheck space_recovery_component(const FiniteBoolSpace& space) {
    const ContinuousMap comparison = space_to_spectrum<K>(space);
    NaturalIsoReport::ObjectCheck oc;
    oc.object = "space with " + std::to_string(space.size()) + " points";
    oc.size = space.size();
    oc.bijective = comparison.is_bijective();
    return oc;
}

// Naturality square for one map f : X -> X': following f and then comparing
// equals comparing and then applying the spectrum of the function-ring hom.
template <ScalarField K>
NaturalIsoReport::SquareCheck space_recovery_square(const ContinuousMap& f) {
    NaturalIsoReport::SquareCheck sc;
    sc.morphism = "map " + std::to_string(f.domain.size()) + " -> " +
                  std::to_string(f.codomain.size()) + " points";
    const ContinuousMap lhs = compose(spectrum_map(function_ring_map<K>(f)),
                                      space_to_spectrum<K>(f.domain));
    const ContinuousMap rhs = compose(space_to_spectrum<K>(f.codomain), f);
    sc.commutes = (lhs.point_map == rhs.point_map) && (lhs.domain == rhs.domain);
    return sc;
}

// ---------------------------------------------------------------------------
// Algebra recovery: atoms against indicator idempotents of the function ring
// on the Stone space.
// ---------------------------------------------------------------------------

// The canonical comparison B -> idempotents(K^{Stone(B)}): an element b goes
// to the indicator of the ultrafilters containing b — coordinatewise, of the
// atoms below b. Reported as an isomorphism check plus op preservation
// against the ring-side operations (join injectable).
template <ScalarField K>
Idempotent<K> algebra_to_ring_idempotent(const BoolAlg& algebra, const BAElement& b) {
    if (b.owner != algebra) throw ContractError("element belongs to a different algebra");
    return Idempotent<K>{function_ring_of_algebra<K>(algebra).indicator(b.member)};
}

template <ScalarField K>
NaturalIsoReport::ObjectCheck algebra_recovery_component(
    const BoolAlg& algebra, const RingJoinFn<K>& join_fn = default_ring_join<K>(),
    std::size_t max_atoms = 12) {
    NaturalIsoReport::ObjectCheck oc;
    oc.object = "algebra on " + std::to_string(algebra.atom_count()) + " atoms";
    oc.size = algebra.atom_count();

    const ProductRing<K> ring = function_ring_of_algebra<K>(algebra);
    const auto elems = all_elements(algebra, max_atoms);

    // Bijective onto the idempotents of the function ring.
    std::vector<std::vector<bool>> images;
    images.reserve(elems.size());
    for (const auto& b : elems)
        images.push_back(algebra_to_ring_idempotent<K>(algebra, b).support());
    std::sort(images.begin(), images.end());
    oc.bijective = std::adjacent_find(images.begin(), images.end()) == images.end() &&
                   images.size() == (std::size_t{1} << ring.size());

    // Operation preservation, exact on ring elements.
    oc.ops_preserved = true;
    const auto img = [&](const BAElement& b) {
        return algebra_to_ring_idempotent<K>(algebra, b).value;
    };
    for (const auto& x : elems) {
        if (!(ring_complement(img(x)) == img(complement(x)))) oc.ops_preserved = false;
        for (const auto& y : elems) {
            if (!(ring_meet(img(x), img(y)) == img(meet(x, y)))) oc.ops_preserved = false;
            if (!(join_fn(img(x), img(y)) == img(join(x, y)))) oc.ops_preserved = false;
        }
    }
    if (!(img(bottom(algebra)) == ring.zero()) || !(img(top(algebra)) == ring.one()))
        oc.ops_preserved = false;
    return oc;
}

// Naturality square for one algebra hom h : B -> B'.
template <ScalarField K>
NaturalIsoReport::SquareCheck algebra_recovery_square(const BAHom& h,
                                                      std::size_t max_atoms = 12) {
    NaturalIsoReport::SquareCheck sc;
    sc.morphism = "hom " + std::to_string(h.domain.atom_count()) + " -> " +
                  std::to_string(h.codomain.atom_count()) + " atoms";
    sc.commutes = true;
    const RingHom<K> transported = function_ring_of_algebra_map<K>(h);
    const BAHom restricted = restrict_to_idempotents(transported);
    for (const auto& b : all_elements(h.domain, max_atoms)) {
        // Compare h then compare, against compare then transport-and-restrict.
        const BAElement lhs = support_element(algebra_to_ring_idempotent<K>(h.codomain, h(b)));
        const BAElement rhs = restricted(
            support_element(algebra_to_ring_idempotent<K>(h.domain, b)));
        if (!(lhs.member == rhs.member)) sc.commutes = false;
    }
    return sc;
}

// ---------------------------------------------------------------------------
// Colimit certification. The function ring of a finite space is the colimit
// of the function rings of its quotients, along the precomposition maps of
// the quotient tower. Certified directly for small spaces: the tower's
// cocone into K^X commutes, the finest level already maps isomorphically,
// and sampled compatible cocones factor uniquely through K^X.
// ---------------------------------------------------------------------------

template <ScalarField K>
struct QuotientTower {
    PartitionSystem presentation;
    std::vector<ProductRing<K>> level_rings;      // K^{X/R} per relation
    std::vector<RingHom<K>> comparisons;          // K^{X/R_coarse} -> K^{X/R_fine} per arrow
    std::vector<RingHom<K>> cocone;               // K^{X/R} -> K^X per level
};

template <ScalarField K>
QuotientTower<K> quotient_tower(const FiniteBoolSpace& space, std::size_t max_points = 6) {
    if (space.size() > max_points)
        throw ResourceError("quotient tower capped at " + std::to_string(max_points) + " points");
    QuotientTower<K> tower{partition_system(space), {}, {}, {}};
    for (std::size_t i = 0; i < tower.presentation.relations.size(); ++i) {
        tower.level_rings.push_back(
            function_ring<K>(tower.presentation.system.levels[i]));
        const Quotient q = quotient(space, tower.presentation.relations[i]);
        tower.cocone.push_back(function_ring_map<K>(q.projection));
    }
    for (const auto& arrow : tower.presentation.system.arrows)
        tower.comparisons.push_back(function_ring_map<K>(arrow.map));
    return tower;
}

template <ScalarField K>
CheckReport colimit_certification(const FiniteBoolSpace& space, Rng& rng,
                                  std::size_t sampled_cocones = 8,
                                  std::size_t max_points = 4) {
    CheckReport r("function ring is the colimit of its quotient tower");
    if (space.size() > max_points)
        throw ResourceError("colimit certification capped at " + std::to_string(max_points) +
                            " points");
    const QuotientTower<K> tower = quotient_tower<K>(space, max_points);
    const ProductRing<K> total = function_ring<K>(space);
    const auto& arrows = tower.presentation.system.arrows;

    // Cocone triangles: comparison then inclusion equals inclusion.
    // Arrow i -> j connects quotients (i finer); on rings the precomposition
    // runs K^{X/R_j} -> K^{X/R_i}.
    for (std::size_t a = 0; a < arrows.size(); ++a) {
        const RingHom<K>& step = tower.comparisons[a];
        const RingHom<K>& into_fine = tower.cocone[arrows[a].from];
        const RingHom<K>& into_coarse = tower.cocone[arrows[a].to];
        r.require_lazy(compose(into_fine, step) == into_coarse,
                       [] { return std::string("a cocone triangle fails to commute"); });
    }

    // The finest level is the discrete relation; its inclusion is an
    // isomorphism, which is what makes the finite colimit attained.
    std::size_t finest = 0;
    for (std::size_t i = 0; i < tower.presentation.relations.size(); ++i)
        if (tower.presentation.relations[i].block_count() ==
            static_cast<std::size_t>(space.size()))
            finest = i;
    const RingHom<K>& finest_inclusion = tower.cocone[finest];
    std::vector<bool> hit(total.size(), false);
    bool finest_iso = tower.level_rings[finest].size() == total.size();
    for (std::size_t t : finest_inclusion.dual_map) {
        if (hit[t]) finest_iso = false;
        hit[t] = true;
    }
    r.require(finest_iso, "the finest level does not map isomorphically");

    // Sampled compatible cocones into sampled targets factor uniquely.
    for (std::size_t trial = 0; trial < sampled_cocones && finest_iso; ++trial) {
        // Random target ring and random hom from the finest level.
        const std::size_t target_size = rng.below(4) + 1;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < target_size; ++i)
            names.push_back("c" + std::to_string(i));
        const ProductRing<K> target(names);
        std::vector<std::size_t> dual(target_size);
        for (auto& d : dual) d = rng.below(std::max<std::size_t>(tower.level_rings[finest].size(), 1));
        if (tower.level_rings[finest].size() == 0) break; // empty space: nothing to sample
        const RingHom<K> psi(tower.level_rings[finest], target, dual);

        // The compatible cocone generated by psi: every level factors through
        // the finest via the transition. The candidate factorization through
        // K^X is psi composed with the inverse of the finest inclusion.
        std::vector<std::size_t> inverse_dual(total.size());
        for (std::size_t p = 0; p < finest_inclusion.dual_map.size(); ++p)
            inverse_dual[finest_inclusion.dual_map[p]] = p;
        const RingHom<K> finest_inverse(total, tower.level_rings[finest],
                                        std::move(inverse_dual));
        const RingHom<K> factor = compose(psi, finest_inverse);

        // It must reproduce the cocone on every level...
        bool reproduces = true;
        for (std::size_t i = 0; i < tower.level_rings.size(); ++i) {
            // The cocone component at level i is psi pulled along the
            // transition finest -> i; find that transition among the arrows.
            const RingHom<K>* step = nullptr;
            for (std::size_t a = 0; a < arrows.size(); ++a)
                if (arrows[a].from == finest && arrows[a].to == i) step = &tower.comparisons[a];
            RingHom<K> phi_i = (i == finest)
                                   ? psi
                                   : compose(psi, *step /* K^{X/R_i} -> K^{X/finest} */);
            if (!(compose(factor, tower.cocone[i]) == phi_i)) reproduces = false;
        }
        r.require(reproduces, "sampled cocone does not factor through the function ring");

        // ...and be the only hom that does: two factorizations agreeing on
        // the finest inclusion agree outright, because that inclusion is an
        // isomorphism.
        const RingHom<K> recomposed = compose(factor, finest_inclusion);
        r.require(recomposed == psi,
                  "factorization does not restrict back to the generating cocone");
    }
    return r;
}

// ---------------------------------------------------------------------------
// Faithfulness of the function-ring functor on small spaces: distinct maps
// induce distinct homs.
// ---------------------------------------------------------------------------

template <ScalarField K>
CheckReport function_ring_faithful_check(const FiniteBoolSpace& domain,
                                         const FiniteBoolSpace& codomain) {
    CheckReport r("function ring functor is faithful");
    if (domain.size() > 4 || codomain.size() > 4)
        throw ResourceError("faithfulness check is exhaustive; capped at 4 points");
    // Enumerate all maps domain -> codomain.
    std::vector<ContinuousMap> maps;
    if (codomain.size() == 0 && domain.size() > 0) return r; // no maps at all
    std::vector<std::size_t> pm(domain.size(), 0);
    while (true) {
        maps.push_back(ContinuousMap(domain, codomain, pm));
        std::size_t i = 0;
        while (i < pm.size() && ++pm[i] == codomain.size()) pm[i++] = 0;
        if (i == pm.size()) break;
        if (domain.size() == 0) break;
    }
    for (std::size_t i = 0; i < maps.size(); ++i)
        for (std::size_t j = i + 1; j < maps.size(); ++j)
            r.require_lazy(!(function_ring_map<K>(maps[i]) == function_ring_map<K>(maps[j])),
                           [] { return std::string("distinct maps give the same hom"); });
    return r;
}

} // namespace stonevn
