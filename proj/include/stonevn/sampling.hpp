#pragma once

#include <functional>
#include <string>
#include <vector>

#include "stonevn/bool_alg.hpp"
#include "stonevn/bool_space.hpp"
#include "stonevn/product_ring.hpp"
#include "stonevn/rng.hpp"

namespace stonevn {

// Seeded corpus builders shared by the verification pipeline and the tests.
// Rational draws mix in zeros deliberately — supports and their idempotents
// are only exercised by elements that vanish somewhere.

inline Rational random_rational(Rng& rng) {
    if (rng.chance(3, 10)) return Rational::zero();
    return Rational(BigInt(rng.int_in(-9, 9)), BigInt(rng.int_in(1, 9)));
}

inline RealApprox random_real(Rng& rng) { return RealApprox(rng.unit() * 4.0 - 2.0); }

inline std::function<Rational(Rng&)> rational_gen() {
    return [](Rng& rng) { return random_rational(rng); };
}

inline std::function<RealApprox(Rng&)> real_gen() {
    return [](Rng& rng) { return random_real(rng); };
}

// Points s1..sm, matching the naming used in the data files.
inline std::vector<std::string> indexed_names(std::size_t count, const std::string& prefix) {
    std::vector<std::string> names;
    names.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
    return names;
}

template <ScalarField K>
ProductRing<K> indexed_ring(std::size_t m, const std::string& prefix = "s") {
    return ProductRing<K>(indexed_names(m, prefix));
}

inline FiniteBoolSpace indexed_space(std::size_t n, const std::string& prefix = "p") {
    return FiniteBoolSpace(indexed_names(n, prefix));
}

inline BoolAlg indexed_algebra(std::size_t n, const std::string& prefix = "a") {
    return BoolAlg(indexed_names(n, prefix));
}

template <ScalarField K>
RingElement<K> random_element(const ProductRing<K>& ring, Rng& rng,
                              const std::function<K(Rng&)>& gen) {
    std::vector<K> coords;
    coords.reserve(ring.size());
    for (std::size_t i = 0; i < ring.size(); ++i) coords.push_back(gen(rng));
    return ring.element(std::move(coords));
}

inline RingElement<Rational> random_rational_element(const ProductRing<Rational>& ring, Rng& rng) {
    return random_element<Rational>(ring, rng, rational_gen());
}

inline RingElement<RealApprox> random_real_element(const ProductRing<RealApprox>& ring, Rng& rng) {
    return random_element<RealApprox>(ring, rng, real_gen());
}

// A random hom needs somewhere to send each codomain point; empty domain
// with nonempty codomain has no homs and is a contract error here.
template <ScalarField K>
RingHom<K> random_hom(const ProductRing<K>& domain, const ProductRing<K>& codomain, Rng& rng) {
    if (domain.size() == 0 && codomain.size() > 0)
        throw ContractError("no homs out of the trivial ring into a nontrivial one");
    std::vector<std::size_t> dual(codomain.size());
    for (auto& d : dual) d = rng.below(domain.size());
    return RingHom<K>(domain, codomain, std::move(dual));
}

inline ContinuousMap random_map(const FiniteBoolSpace& domain, const FiniteBoolSpace& codomain,
                                Rng& rng) {
    if (codomain.size() == 0 && domain.size() > 0)
        throw ContractError("no maps from a nonempty space into the empty one");
    std::vector<std::size_t> pm(domain.size());
    for (auto& p : pm) p = rng.below(codomain.size());
    return ContinuousMap(domain, codomain, std::move(pm));
}

inline BAHom random_ba_hom(const BoolAlg& domain, const BoolAlg& codomain, Rng& rng) {
    if (domain.atom_count() == 0 && codomain.atom_count() > 0)
        throw ContractError("no homs out of the degenerate algebra");
    std::vector<std::size_t> dual(codomain.atom_count());
    for (auto& d : dual) d = rng.below(domain.atom_count());
    return BAHom(domain, codomain, std::move(dual));
}

inline BAElement random_ba_element(const BoolAlg& algebra, Rng& rng) {
    std::vector<bool> m(algebra.atom_count());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = rng.coin();
    return element_mask(algebra, std::move(m));
}

} // namespace stonevn
