#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stonevn/bool_space.hpp"
#include "stonevn/errors.hpp"
#include "stonevn/rational.hpp"
#include "stonevn/report.hpp"
#include "stonevn/rng.hpp"
#include "stonevn/smooth_expr.hpp"

namespace stonevn {

// ---------------------------------------------------------------------------
// A finite product of copies of the coordinate field K, indexed by a named
// point set S. Every operation is componentwise; it is exactly this shape of
// ring that the rest of the workbench studies: regularity witnesses,
// idempotents, spectra and localizations all reduce to coordinate support.
// ---------------------------------------------------------------------------

template <ScalarField K>
struct RingElement;

template <ScalarField K>
struct ProductRing {
    std::vector<std::string> points; // index set S; order is the coordinate order

    ProductRing() = default; // |S| = 0: the trivial ring, whose one element has 0 = 1

    explicit ProductRing(std::vector<std::string> names) : points(std::move(names)) {
        for (const auto& p : points)
            if (p.empty()) throw ContractError("ring point with empty name");
        auto sorted = points;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ContractError("ring point names must be unique");
    }

    std::size_t size() const { return points.size(); }

    bool operator==(const ProductRing& other) const { return points == other.points; }
    bool operator!=(const ProductRing& other) const { return !(*this == other); }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < points.size(); ++i)
            if (points[i] == name) return i;
        return std::nullopt;
    }

    RingElement<K> element(std::vector<K> coords) const;
    RingElement<K> zero() const;
    RingElement<K> one() const;
    RingElement<K> constant(const K& c) const;
    // Element with coordinate 1 exactly on the given support.
    RingElement<K> indicator(const std::vector<bool>& support) const;
};

template <ScalarField K>
struct RingElement {
    ProductRing<K> owner;
    std::vector<K> coords;

    const K& operator[](std::size_t i) const { return coords[i]; }

    bool is_zero() const {
        for (const auto& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }

    std::vector<bool> support() const {
        std::vector<bool> s(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) s[i] = !coords[i].is_zero();
        return s;
    }

    bool operator==(const RingElement& other) const {
        return owner == other.owner && coords == other.coords;
    }
    bool operator!=(const RingElement& other) const { return !(*this == other); }
};

template <ScalarField K>
RingElement<K> ProductRing<K>::element(std::vector<K> coords) const {
    if (coords.size() != points.size())
        throw ContractError("element has " + std::to_string(coords.size()) +
                            " coordinates, ring has " + std::to_string(points.size()) +
                            " points");
    return RingElement<K>{*this, std::move(coords)};
}

template <ScalarField K>
RingElement<K> ProductRing<K>::zero() const {
    return RingElement<K>{*this, std::vector<K>(points.size(), K::zero())};
}

template <ScalarField K>
RingElement<K> ProductRing<K>::one() const {
    return RingElement<K>{*this, std::vector<K>(points.size(), K::one())};
}

template <ScalarField K>
RingElement<K> ProductRing<K>::constant(const K& c) const {
    return RingElement<K>{*this, std::vector<K>(points.size(), c)};
}

template <ScalarField K>
RingElement<K> ProductRing<K>::indicator(const std::vector<bool>& support) const {
    if (support.size() != points.size())
        throw ContractError("indicator support size mismatch");
    std::vector<K> coords(points.size(), K::zero());
    for (std::size_t i = 0; i < support.size(); ++i)
        if (support[i]) coords[i] = K::one();
    return RingElement<K>{*this, std::move(coords)};
}

namespace detail {
template <ScalarField K>
void require_same_ring(const RingElement<K>& a, const RingElement<K>& b) {
    if (a.owner != b.owner)
        throw ContractError("elements belong to different rings");
}
} // namespace detail

template <ScalarField K>
RingElement<K> operator+(const RingElement<K>& a, const RingElement<K>& b) {
    detail::require_same_ring(a, b);
    std::vector<K> c(a.coords.size(), K::zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] + b.coords[i];
    return RingElement<K>{a.owner, std::move(c)};
}

template <ScalarField K>
RingElement<K> operator-(const RingElement<K>& a, const RingElement<K>& b) {
    detail::require_same_ring(a, b);
    std::vector<K> c(a.coords.size(), K::zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] - b.coords[i];
    return RingElement<K>{a.owner, std::move(c)};
}

template <ScalarField K>
RingElement<K> operator*(const RingElement<K>& a, const RingElement<K>& b) {
    detail::require_same_ring(a, b);
    std::vector<K> c(a.coords.size(), K::zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] * b.coords[i];
    return RingElement<K>{a.owner, std::move(c)};
}

template <ScalarField K>
RingElement<K> operator-(const RingElement<K>& a) {
    std::vector<K> c(a.coords.size(), K::zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coords[i];
    return RingElement<K>{a.owner, std::move(c)};
}

template <ScalarField K>
bool is_unit(const RingElement<K>& a) {
    for (const auto& c : a.coords)
        if (c.is_zero()) return false;
    return true;
}

template <ScalarField K>
RingElement<K> unit_inverse(const RingElement<K>& a) {
    if (!is_unit(a)) throw DomainError("element is not a unit");
    std::vector<K> c(a.coords.size(), K::zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = inverse(a.coords[i]);
    return RingElement<K>{a.owner, std::move(c)};
}

// ---------------------------------------------------------------------------
// Regularity witnesses.
//
// The three equivalent shapes of the regularity condition, each with its
// explicit witness:
//   square identity   a = a*a*x            (square_witness)
//   principal ideal   (a) = (e), e*e = e   (idempotent_of: e, y with e*y = a,
//                                           z with a*z = e)
//   quasi-inverse     a = a*a*b, b = b*b*a (quasi_inverse; the unique such b)
// The quasi-inverse is produced through the witness chain b = a*x*x rather
// than by direct case analysis, so tests can compare it against an
// independently written componentwise oracle.
// ---------------------------------------------------------------------------

// x with a = a*a*x: reciprocal on the support, zero elsewhere.
template <ScalarField K>
RingElement<K> square_witness(const RingElement<K>& a) {
    std::vector<K> x(a.coords.size(), K::zero());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!a.coords[i].is_zero()) x[i] = inverse(a.coords[i]);
    return RingElement<K>{a.owner, std::move(x)};
}

// Given any witness x for the square identity, a*x*x is the quasi-inverse —
// the minimal choice among all witnesses. Rejects x that are not witnesses.
template <ScalarField K>
RingElement<K> minimal_quasi_inverse_witness(const RingElement<K>& a, const RingElement<K>& x) {
    detail::require_same_ring(a, x);
    if (!(a * a * x == a))
        throw ContractError("x does not satisfy the square identity a = a*a*x");
    return a * x * x;
}

template <ScalarField K>
RingElement<K> quasi_inverse(const RingElement<K>& a) {
    return minimal_quasi_inverse_witness(a, square_witness(a));
}

template <ScalarField K>
struct Idempotent {
    RingElement<K> value;

    // Validates both shapes of the invariant: every coordinate is 0 or 1,
    // and e*e = e.
    static Idempotent of(const RingElement<K>& e) {
        for (const auto& c : e.coords)
            if (!c.is_zero() && !c.is_one())
                throw ContractError("idempotent coordinate other than 0 or 1");
        if (!(e * e == e)) throw ContractError("element is not idempotent");
        return Idempotent{e};
    }

    std::vector<bool> support() const { return value.support(); }
    bool operator==(const Idempotent& other) const { return value == other.value; }
    bool operator!=(const Idempotent& other) const { return !(*this == other); }
};

// Witness package for the principal-ideal shape: (a) = (e) with e*y = a and
// a*z = e.
template <ScalarField K>
struct PrincipalIdealWitness {
    Idempotent<K> generator; // e = a * quasi_inverse(a)
    RingElement<K> y;        // e*y = a
    RingElement<K> z;        // a*z = e
};

template <ScalarField K>
PrincipalIdealWitness<K> idempotent_of(const RingElement<K>& a) {
    const RingElement<K> x = square_witness(a);
    return PrincipalIdealWitness<K>{Idempotent<K>::of(a * x), a, x};
}

// Canonical enumeration of all 2^|S| idempotents: subset bitmask order, with
// the first point as the least-significant bit. Exponential; capped.
template <ScalarField K>
std::vector<Idempotent<K>> idempotents(const ProductRing<K>& ring, std::size_t max_points = 20) {
    if (ring.size() > max_points)
        throw ResourceError("idempotent enumeration over " + std::to_string(ring.size()) +
                            " points exceeds bound " + std::to_string(max_points));
    const std::size_t n = ring.size();
    std::vector<Idempotent<K>> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<bool> support(n);
        for (std::size_t i = 0; i < n; ++i) support[i] = (mask >> i) & 1;
        out.push_back(Idempotent<K>{ring.indicator(support)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms. Every hom between finite products of the fixed field K is
// precomposition with a map of index sets: (f(a))_t = a_{dual(t)}. That dual
// map is the whole representation.
// ---------------------------------------------------------------------------

template <ScalarField K>
struct RingHom {
    ProductRing<K> domain;
    ProductRing<K> codomain;
    std::vector<std::size_t> dual_map; // one entry per codomain point, valued in domain indices

    RingHom(ProductRing<K> dom, ProductRing<K> cod, std::vector<std::size_t> dual)
        : domain(std::move(dom)), codomain(std::move(cod)), dual_map(std::move(dual)) {
        if (dual_map.size() != codomain.size())
            throw ContractError("dual map must assign a domain point to every codomain point");
        for (std::size_t s : dual_map)
            if (s >= domain.size())
                throw ContractError("dual map hits a point outside the domain ring");
    }

    static RingHom identity(const ProductRing<K>& ring) {
        std::vector<std::size_t> dual(ring.size());
        for (std::size_t i = 0; i < dual.size(); ++i) dual[i] = i;
        return RingHom(ring, ring, std::move(dual));
    }

    RingElement<K> operator()(const RingElement<K>& a) const {
        if (a.owner != domain) throw ContractError("element does not belong to the hom's domain");
        std::vector<K> c(codomain.size(), K::zero());
        for (std::size_t t = 0; t < c.size(); ++t) c[t] = a.coords[dual_map[t]];
        return RingElement<K>{codomain, std::move(c)};
    }

    bool operator==(const RingHom& other) const {
        return domain == other.domain && codomain == other.codomain && dual_map == other.dual_map;
    }
    bool operator!=(const RingHom& other) const { return !(*this == other); }
};

// g after f. Dual maps compose the opposite way around.
template <ScalarField K>
RingHom<K> compose(const RingHom<K>& g, const RingHom<K>& f) {
    if (f.codomain != g.domain) throw ContractError("homs do not compose: codomain/domain mismatch");
    std::vector<std::size_t> dual(g.codomain.size());
    for (std::size_t u = 0; u < dual.size(); ++u) dual[u] = f.dual_map[g.dual_map[u]];
    return RingHom<K>(f.domain, g.codomain, std::move(dual));
}

// ---------------------------------------------------------------------------
// Spectrum. For a finite product of fields the prime spectrum, the maximal
// spectrum and the smooth spectrum coincide: one prime p_s = {a : a_s = 0}
// per point, carrying the discrete topology.
// ---------------------------------------------------------------------------

struct PrimePoint {
    std::string name;  // the point s of S whose vanishing ideal this is
    std::size_t index; // position of s in the ring's point order
};

template <ScalarField K>
std::vector<PrimePoint> prime_points(const ProductRing<K>& ring) {
    std::vector<PrimePoint> out;
    out.reserve(ring.size());
    for (std::size_t i = 0; i < ring.size(); ++i)
        out.push_back(PrimePoint{ring.points[i], i});
    return out;
}

template <ScalarField K>
FiniteBoolSpace spectrum(const ProductRing<K>& ring) {
    return FiniteBoolSpace(ring.points);
}

// The basic open set attached to a: the primes not containing it, i.e. the
// support of a read as a subset of the spectrum. Clopen because the topology
// is discrete.
template <ScalarField K>
std::vector<bool> support_clopen(const RingElement<K>& a) {
    return a.support();
}

// Spectrum is contravariant: a hom f : A -> B pulls primes of B back to
// primes of A along the dual map.
template <ScalarField K>
ContinuousMap spectrum_map(const RingHom<K>& f) {
    return ContinuousMap(spectrum(f.codomain), spectrum(f.domain), f.dual_map);
}

// ---------------------------------------------------------------------------
// Localization. Inverting an idempotent e collapses the coordinates where e
// vanishes, so the localization is the product over the support of e and the
// localization map is coordinate restriction; its kernel is (1 - e).
// Inverting an arbitrary element factors through the idempotent generator of
// its principal ideal.
// ---------------------------------------------------------------------------

template <ScalarField K>
struct Localization {
    ProductRing<K> ring;  // product over the support of e
    RingHom<K> map;       // the localization hom, a coordinate restriction
    Idempotent<K> inverted; // the idempotent that became invertible
};

template <ScalarField K>
Localization<K> localize_at_idempotent(const ProductRing<K>& ring, const Idempotent<K>& e) {
    if (e.value.owner != ring) throw ContractError("idempotent does not belong to this ring");
    std::vector<std::string> kept;
    std::vector<std::size_t> dual;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        if (!e.value.coords[i].is_zero()) {
            kept.push_back(ring.points[i]);
            dual.push_back(i);
        }
    }
    ProductRing<K> local(std::move(kept));
    return Localization<K>{local, RingHom<K>(ring, local, std::move(dual)), e};
}

template <ScalarField K>
Localization<K> localize_at_element(const ProductRing<K>& ring, const RingElement<K>& a) {
    if (a.owner != ring) throw ContractError("element does not belong to this ring");
    return localize_at_idempotent(ring, idempotent_of(a).generator);
}

// ---------------------------------------------------------------------------
// Smooth structure. Expressions act componentwise; this is only meaningful
// over the floating backend.
// ---------------------------------------------------------------------------

inline RingElement<RealApprox> interpret(const SmoothExpr& f,
                                         std::span<const RingElement<RealApprox>> args) {
    if (args.size() != static_cast<std::size_t>(f.arity()))
        throw ContractError("interpret: expression arity " + std::to_string(f.arity()) +
                            ", got " + std::to_string(args.size()) + " arguments");
    const ProductRing<RealApprox>& ring = args.front().owner; // arity >= 1

    for (const auto& a : args)
        if (a.owner != ring) throw ContractError("interpret arguments belong to different rings");
    std::vector<RealApprox> out(ring.size(), RealApprox::zero());
    std::vector<RealApprox> point(args.size(), RealApprox::zero());
    for (std::size_t s = 0; s < ring.size(); ++s) {
        for (std::size_t k = 0; k < args.size(); ++k) point[k] = args[k].coords[s];
        out[s] = f.eval(std::span<const RealApprox>(point));
    }
    return RingElement<RealApprox>{ring, std::move(out)};
}

inline RingElement<RealApprox> interpret(const SmoothExpr& f,
                                         const std::vector<RingElement<RealApprox>>& args) {
    return interpret(f, std::span<const RingElement<RealApprox>>(args));
}

} // namespace stonevn
