#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <vector>

#include "stonevn/product_ring.hpp"
#include "stonevn/report.hpp"
#include "stonevn/rng.hpp"
#include "stonevn/sampling.hpp"
#include "stonevn/smooth_expr.hpp"

namespace stonevn {

// ---------------------------------------------------------------------------
// Regularity witnesses
// ---------------------------------------------------------------------------

// Every element of a finite product of fields is regular, witnessed by a
// chain of identities: the square witness x, the principal-ideal generator
// e = a*x with its two membership witnesses, and the quasi-inverse b = a*x*x.
// All of them are exact identities in the ring, checked here with exact
// comparison.
template <ScalarField K>
CheckReport regularity_witness_check(const RingElement<K>& a) {
    CheckReport r("regularity witness identities");
    const RingElement<K> x = square_witness(a);
    const PrincipalIdealWitness<K> w = idempotent_of(a);
    const RingElement<K> e = w.generator.value;
    const RingElement<K> b = quasi_inverse(a);
    r.require(a == a * a * x, "square identity a = a*a*x fails");
    r.require(e * e == e, "generator is not idempotent");
    r.require(e * w.y == a, "membership witness e*y = a fails");
    r.require(a * w.z == e, "membership witness a*z = e fails");
    r.require(a == a * a * b, "quasi-inverse identity a = a*a*b fails");
    r.require(b == b * b * a, "quasi-inverse identity b = b*b*a fails");
    r.require(a * b * a == a, "inner inverse identity a*b*a = a fails");
    r.require(b * a * b == b, "outer inverse identity b*a*b = b fails");
    return r;
}

// Distinct idempotents generate distinct principal ideals.  For idempotents
// the membership test is multiplicative: e lies in (f) exactly when e*f = e.
template <ScalarField K>
CheckReport generator_uniqueness_check(const ProductRing<K>& ring, std::size_t max_points = 20) {
    CheckReport r("idempotent generators of principal ideals are unique");
    const std::vector<Idempotent<K>> es = idempotents(ring, max_points);
    for (std::size_t i = 0; i < es.size(); ++i) {
        const RingElement<K> e = es[i].value;
        r.require(e * e == e, "enumerated element is not idempotent");
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            const RingElement<K> f = es[j].value;
            const bool same_ideal = (e * f == e) && (f * e == f);
            r.require_lazy(!same_ideal, [&] {
                return "distinct idempotents " + std::to_string(i) + " and " + std::to_string(j) +
                       " generate the same ideal";
            });
        }
    }
    return r;
}

// Every element generates the same ideal as its support idempotent: a and
// idempotent_of(a) are mutually divisible.
template <ScalarField K>
CheckReport principal_ideal_check(const RingElement<K>& a) {
    CheckReport r("principal ideal matches the support idempotent");
    const PrincipalIdealWitness<K> w = idempotent_of(a);
    const RingElement<K> e = w.generator.value;
    r.require(e * w.y == a, "a is not a multiple of its idempotent");
    r.require(a * w.z == e, "the idempotent is not a multiple of a");
    r.require(w.generator.support() == a.support(), "supports of a and its idempotent differ");
    return r;
}

// ---------------------------------------------------------------------------
// Reducedness
// ---------------------------------------------------------------------------

// Generic nilpotency scan, parametric in the multiplication so the tests can
// aim it at a ring that genuinely has nilpotents and watch it fail.
template <class Elem, class MulFn, class IsZeroFn>
CheckReport nilpotent_scan(const std::vector<Elem>& elements, MulFn mul, IsZeroFn is_zero,
                           std::size_t max_power = 4) {
    CheckReport r("no nonzero nilpotents");
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const Elem& a = elements[i];
        if (is_zero(a)) {
            r.pass();
            continue;
        }
        Elem power = a;
        bool vanished = false;
        for (std::size_t k = 2; k <= max_power; ++k) {
            power = mul(power, a);
            if (is_zero(power)) {
                vanished = true;
                break;
            }
        }
        r.require_lazy(!vanished, [&] {
            return "element #" + std::to_string(i) + " is nilpotent but nonzero";
        });
    }
    return r;
}

template <ScalarField K>
CheckReport reducedness_check(const ProductRing<K>& ring, Rng& rng,
                              const std::function<K(Rng&)>& gen, std::size_t samples = 64) {
    std::vector<RingElement<K>> elems;
    elems.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) elems.push_back(random_element(ring, rng, gen));
    return nilpotent_scan(
        elems, [](const RingElement<K>& a, const RingElement<K>& b) { return a * b; },
        [](const RingElement<K>& a) { return a.is_zero(); });
}

// ---------------------------------------------------------------------------
// Ideal enumeration and the spectrum
// ---------------------------------------------------------------------------

// Independent route to the spectrum.  An ideal of a finite product of fields
// is determined by the set of coordinates it allows to be nonzero: membership
// depends only on the support, so ideals correspond to subsets T of the index
// set, ordered by inclusion.  Primality is decided from the definition by
// quantifying over idempotent generators (whose supports range over all
// subsets), and maximality from the inclusion order.  The result — primes =
// maximals = complements of singletons — is then compared against the
// spectrum construction, and the discrete topology is confirmed by exhibiting
// every singleton as a basic open set.
struct IdealClassification {
    std::vector<std::uint64_t> prime_supports;   // allowed-support masks of prime ideals
    std::vector<std::uint64_t> maximal_supports; // allowed-support masks of maximal ideals
};

template <ScalarField K>
IdealClassification classify_ideals(const ProductRing<K>& ring, std::size_t max_points = 4) {
    if (ring.size() > max_points)
        throw ResourceError("ideal enumeration over " + std::to_string(ring.size()) +
                            " factors exceeds the bound " + std::to_string(max_points));
    const std::size_t n = ring.size();
    const std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
    const auto subset = [](std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; };
    IdealClassification out;
    for (std::uint64_t t = 0; t <= full; ++t) {
        if (t == full) continue; // the improper ideal is neither prime nor maximal
        bool prime = true;
        for (std::uint64_t e = 0; e <= full && prime; ++e) {
            for (std::uint64_t f = 0; f <= full && prime; ++f) {
                if (subset(e & f, t) && !subset(e, t) && !subset(f, t)) prime = false;
            }
        }
        bool maximal = true;
        for (std::uint64_t u = 0; u <= full && maximal; ++u) {
            if (subset(t, u) && u != t && u != full) maximal = false;
        }
        if (prime) out.prime_supports.push_back(t);
        if (maximal) out.maximal_supports.push_back(t);
    }
    return out;
}

template <ScalarField K>
CheckReport spectrum_collapse_check(const ProductRing<K>& ring, std::size_t max_points = 4) {
    CheckReport r("primes = maximals = one point per factor, discretely");
    const IdealClassification ideals = classify_ideals(ring, max_points);
    const std::size_t n = ring.size();
    const std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);

    r.require(ideals.prime_supports == ideals.maximal_supports,
              "prime ideals and maximal ideals differ");
    r.require(ideals.prime_supports.size() == n,
              "expected exactly one prime ideal per factor, found " +
                  std::to_string(ideals.prime_supports.size()));
    // Each prime is the vanishing ideal of a single coordinate: its allowed
    // support is the complement of one singleton.
    std::vector<bool> seen(n, false);
    for (const std::uint64_t t : ideals.prime_supports) {
        const std::uint64_t missing = full & ~t;
        const bool singleton = missing != 0 && (missing & (missing - 1)) == 0;
        r.require(singleton, "a prime ideal does not vanish at exactly one coordinate");
        if (singleton) {
            std::size_t s = 0;
            while (!((missing >> s) & 1)) ++s;
            r.require(!seen[s], "two primes vanish at the same coordinate");
            seen[s] = true;
        }
    }

    // Agreement with the spectrum construction: same point set, same names.
    const FiniteBoolSpace spec = spectrum(ring);
    r.require(spec.size() == ideals.prime_supports.size(),
              "spectrum size disagrees with the ideal enumeration");
    const std::vector<PrimePoint> pts = prime_points(ring);
    for (const PrimePoint& p : pts) {
        r.require(p.index < n && ring.points[p.index] == p.name,
                  "spectrum point does not name a factor");
    }

    // Discreteness: every singleton is the basic open set of an atom
    // idempotent, so the topology on the spectrum is discrete.
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<bool> mask(n, false);
        mask[s] = true;
        const std::vector<bool> open = support_clopen(ring.indicator(mask));
        r.require(open == mask, "the basic open set of an atom is not the matching singleton");
    }
    return r;
}

// ---------------------------------------------------------------------------
// Residue fields
// ---------------------------------------------------------------------------

// At each spectrum point, quotienting by the prime ideal is evaluation of the
// matching coordinate, and the quotient is the scalar field itself: the
// evaluation map is a surjective ring map whose kernel is exactly the prime,
// and every nonzero value is invertible.
template <ScalarField K>
CheckReport residue_field_check(const ProductRing<K>& ring, std::size_t point, Rng& rng,
                                const std::function<K(Rng&)>& gen, std::size_t samples = 32) {
    CheckReport r("residue field at a spectrum point");
    if (point >= ring.size()) throw ContractError("residue point index out of range");
    const auto eval = [&](const RingElement<K>& a) { return a[point]; };
    r.require(eval(ring.one()) == K::one(), "evaluation does not send 1 to 1");
    for (std::size_t i = 0; i < samples; ++i) {
        const RingElement<K> a = random_element(ring, rng, gen);
        const RingElement<K> b = random_element(ring, rng, gen);
        r.require(eval(a + b) == eval(a) + eval(b), "evaluation is not additive");
        r.require(eval(a * b) == eval(a) * eval(b), "evaluation is not multiplicative");
        // Kernel = the prime: vanishing at the point is exactly membership.
        const bool in_kernel = eval(a).is_zero();
        const bool in_prime = !a.support()[point];
        r.require(in_kernel == in_prime, "kernel of evaluation differs from the prime ideal");
        // Surjectivity: any sampled scalar is hit by its constant element.
        const K c = gen(rng);
        r.require(eval(ring.constant(c)) == c, "evaluation misses a scalar value");
        // Field: nonzero classes are invertible.
        if (!eval(a).is_zero())
            r.require(eval(a) * inverse(eval(a)) == K::one(),
                      "a nonzero residue class is not invertible");
    }
    return r;
}

// ---------------------------------------------------------------------------
// Localization
// ---------------------------------------------------------------------------

// Localizing at an idempotent e is restriction to the coordinates in its
// support; the kernel is the complementary principal ideal (1-e), the map is
// surjective, and e itself becomes the identity.  Together these say the
// localization is the direct factor cut out by e.
template <ScalarField K>
CheckReport localization_check(const ProductRing<K>& ring, const Idempotent<K>& e, Rng& rng,
                               const std::function<K(Rng&)>& gen, std::size_t samples = 16) {
    CheckReport r("localization at an idempotent");
    const Localization<K> loc = localize_at_idempotent(ring, e);
    const RingElement<K> ev = e.value;
    const RingElement<K> complement = ring.one() - ev;

    r.require(loc.map(ring.one()) == loc.ring.one(), "localization does not preserve 1");
    r.require(loc.map(complement).is_zero(), "1-e does not map to zero");
    if (ring.size() > 0)
        r.require(loc.map(ev) == loc.ring.one(), "e does not become the identity");

    // Kernel = (1-e): membership in the principal ideal of 1-e is
    // a*(1-e) = a, and that must coincide with mapping to zero.
    for (std::size_t i = 0; i < samples; ++i) {
        const RingElement<K> a = random_element(ring, rng, gen);
        const RingElement<K> b = random_element(ring, rng, gen);
        const bool killed = loc.map(a).is_zero();
        const bool in_complement_ideal = (a * complement == a);
        r.require(killed == in_complement_ideal,
                  "kernel of the localization differs from the ideal (1-e)");
        r.require(loc.map(a + b) == loc.map(a) + loc.map(b), "localization is not additive");
        r.require(loc.map(a * b) == loc.map(a) * loc.map(b), "localization is not multiplicative");
        // The direct factor A*e maps onto the localization faithfully:
        // restriction identifies a*e with the image of a.
        r.require(loc.map(a * ev) == loc.map(a), "a*e and a have different images");
    }

    // Surjectivity: every target element extends by zero to a preimage.
    for (std::size_t i = 0; i < samples; ++i) {
        const RingElement<K> target = random_element(loc.ring, rng, gen);
        std::vector<K> lifted(ring.size(), K::zero());
        for (std::size_t t = 0; t < loc.ring.size(); ++t)
            lifted[loc.map.dual_map[t]] = target[t];
        r.require(loc.map(ring.element(lifted)) == target, "an element fails to lift");
    }

    // Exhaustively over idempotents (they are few): mapping to zero is
    // exactly being below 1-e, so the kernel is generated by 1-e.
    if (ring.size() <= 12) {
        for (const Idempotent<K>& d : idempotents(ring)) {
            const RingElement<K> dv = d.value;
            const bool killed = loc.map(dv).is_zero();
            const bool below = (dv * complement == dv);
            r.require(killed == below, "an idempotent contradicts kernel = (1-e)");
        }
    }
    return r;
}

// Localizing at an arbitrary element inverts it, and is universal for doing
// so: every map that inverts the element factors uniquely through the
// localization.  Uniqueness is forced because the localization map is
// surjective; the factoring map is reconstructed from supports.
template <ScalarField K>
CheckReport localization_universal_check(const ProductRing<K>& ring, const RingElement<K>& a,
                                         Rng& rng, std::size_t samples = 8) {
    CheckReport r("universal property of localization at an element");
    const Localization<K> loc = localize_at_element(ring, a);
    r.require(is_unit(loc.map(a)), "the localized element is not invertible");

    const std::vector<bool> supp = a.support();
    std::vector<std::size_t> support_indices;
    for (std::size_t s = 0; s < supp.size(); ++s)
        if (supp[s]) support_indices.push_back(s);

    if (support_indices.empty()) {
        // a = 0: the only ring in which 0 is invertible is the trivial one.
        r.require(loc.ring.size() == 0, "localizing at zero did not give the trivial ring");
        return r;
    }

    for (std::size_t trial = 0; trial < samples; ++trial) {
        // A map inverting a must send every target coordinate to a coordinate
        // in the support of a; sampling duals from the support enumerates
        // exactly the maps f with f(a) invertible.
        const ProductRing<K> target = indexed_ring<K>(rng.below(3) + 1, "t");
        std::vector<std::size_t> dual(target.size());
        for (auto& d : dual) d = support_indices[rng.below(support_indices.size())];
        const RingHom<K> f(ring, target, dual);
        r.require(is_unit(f(a)), "sampled comparison map does not invert a");

        // The only candidate factoring map sends target point t to the
        // position of f's dual point inside the localized ring.
        std::vector<std::size_t> factored_dual(target.size());
        for (std::size_t t = 0; t < target.size(); ++t)
            factored_dual[t] = loc.ring.index_of(ring.points[f.dual_map[t]]).value();
        const RingHom<K> factored(loc.ring, target, factored_dual);
        r.require(compose(factored, loc.map) == f, "factoring through the localization fails");

        // Uniqueness: the localization map is surjective (it has a section by
        // zero-extension), so any two factorings agreeing after composition
        // agree.  Concretely, a factoring's dual is pinned pointwise.
        for (std::size_t t = 0; t < target.size(); ++t) {
            const std::size_t forced = loc.map.dual_map[factored_dual[t]];
            r.require(forced == f.dual_map[t], "factoring map is not uniquely determined");
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Equalizers
// ---------------------------------------------------------------------------

// The equalizer of two ring maps is the subring where they agree.  For maps
// between finite products of fields it is described by a partition of the
// domain coordinates: merge the two dual images of every codomain point, and
// the equalizer consists of the elements constant on each merged class.
template <ScalarField K>
struct Equalizer {
    RingHom<K> left;
    RingHom<K> right;
    std::vector<std::size_t> class_of; // domain coordinate -> class id (0-based, dense)
    std::size_t class_count = 0;

    bool contains(const RingElement<K>& a) const { return left(a) == right(a); }

    // An element constant on each class, from one scalar per class.
    RingElement<K> member_from(const std::vector<K>& class_values) const {
        if (class_values.size() != class_count)
            throw ContractError("expected one scalar per equalizer class");
        std::vector<K> coords;
        coords.reserve(class_of.size());
        for (const std::size_t c : class_of) coords.push_back(class_values[c]);
        return left.domain.element(std::move(coords));
    }
};

template <ScalarField K>
Equalizer<K> equalizer(const RingHom<K>& left, const RingHom<K>& right) {
    if (left.domain != right.domain || left.codomain != right.codomain)
        throw ContractError("equalizer requires a parallel pair of maps");
    const std::size_t n = left.domain.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (std::size_t t = 0; t < left.codomain.size(); ++t) {
        const std::size_t a = find(left.dual_map[t]);
        const std::size_t b = find(right.dual_map[t]);
        if (a != b) parent[a] = b;
    }
    Equalizer<K> eq{left, right, std::vector<std::size_t>(n, 0), 0};
    std::vector<std::size_t> root_to_class(n, n);
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t root = find(v);
        if (root_to_class[root] == n) root_to_class[root] = eq.class_count++;
        eq.class_of[v] = root_to_class[root];
    }
    return eq;
}

template <ScalarField K>
RingElement<K> random_equalizer_member(const Equalizer<K>& eq, Rng& rng,
                                       const std::function<K(Rng&)>& gen) {
    std::vector<K> values;
    values.reserve(eq.class_count);
    for (std::size_t c = 0; c < eq.class_count; ++c) values.push_back(gen(rng));
    return eq.member_from(values);
}

// The equalizer is a subring closed under the regular structure: sums,
// products, 1, and — the point of working with regular rings — the
// quasi-inverse, all exactly.
template <ScalarField K>
CheckReport equalizer_closure_check(const Equalizer<K>& eq, Rng& rng,
                                    const std::function<K(Rng&)>& gen, std::size_t samples = 32) {
    CheckReport r("equalizer is a regular subring");
    r.require(eq.contains(eq.left.domain.one()), "1 is not in the equalizer");
    r.require(eq.contains(eq.left.domain.zero()), "0 is not in the equalizer");
    for (std::size_t i = 0; i < samples; ++i) {
        const RingElement<K> a = random_equalizer_member(eq, rng, gen);
        const RingElement<K> b = random_equalizer_member(eq, rng, gen);
        r.require(eq.contains(a), "sampled member is not in the equalizer");
        r.require(eq.contains(a + b), "equalizer not closed under addition");
        r.require(eq.contains(a * b), "equalizer not closed under multiplication");
        r.require(eq.contains(-a), "equalizer not closed under negation");
        r.require(eq.contains(quasi_inverse(a)), "equalizer not closed under quasi-inverse");
    }
    return r;
}

// ---------------------------------------------------------------------------
// Smooth structure
// ---------------------------------------------------------------------------

// The interpreter is injectable so the tests can hand in a deliberately
// corrupted one and watch the axiom checks fail.
using RealInterpreter =
    std::function<RingElement<RealApprox>(const SmoothExpr&, const std::vector<RingElement<RealApprox>>&)>;

inline RealInterpreter default_interpreter() {
    return [](const SmoothExpr& f, const std::vector<RingElement<RealApprox>>& args) {
        return interpret(f, args);
    };
}

// Interpreting the i-th projection expression returns the i-th argument,
// coordinate by coordinate, with no arithmetic in between — equality of
// doubles here is exact equality of the stored values.
inline CheckReport projection_axiom_check(const ProductRing<RealApprox>& ring,
                                          std::size_t samples, Rng& rng,
                                          const RealInterpreter& interp = default_interpreter()) {
    CheckReport r("projection expressions act as projections");
    for (std::size_t trial = 0; trial < samples; ++trial) {
        const std::size_t arity = static_cast<std::size_t>(rng.int_in(1, 4));
        const std::size_t which = rng.below(arity);
        std::vector<RingElement<RealApprox>> args;
        args.reserve(arity);
        for (std::size_t i = 0; i < arity; ++i) args.push_back(random_real_element(ring, rng));
        const SmoothExpr proj =
            SmoothExpr::variable(static_cast<int>(arity), static_cast<int>(which) + 1);
        const RingElement<RealApprox> got = interp(proj, args);
        r.require_lazy(got == args[which], [&] {
            return "projection " + std::to_string(which + 1) + " of " + std::to_string(arity) +
                   " arguments did not return its argument exactly";
        });
    }
    return r;
}

// Interpreting a composite equals composing the interpretations.  Evaluation
// of the two sides associates floating-point work differently, so agreement
// is up to a relative tolerance.  Samples whose evaluation leaves the domain
// (overflow in exp towers) are skipped and resampled deterministically.
inline CheckReport composition_axiom_check(const ProductRing<RealApprox>& ring,
                                           std::size_t samples, double tolerance, Rng& rng,
                                           const RealInterpreter& interp = default_interpreter()) {
    CheckReport r("interpretation commutes with composition");
    std::size_t done = 0;
    std::size_t skipped = 0;
    const std::size_t max_attempts = samples * 8 + 64;
    for (std::size_t attempt = 0; attempt < max_attempts && done < samples; ++attempt) {
        const int outer_arity = rng.int_in(1, 3);
        const int inner_arity = rng.int_in(1, 3);
        const SmoothExpr outer = SmoothExpr::random(outer_arity, 3, rng);
        std::vector<SmoothExpr> inners;
        inners.reserve(static_cast<std::size_t>(outer_arity));
        for (int i = 0; i < outer_arity; ++i)
            inners.push_back(SmoothExpr::random(inner_arity, 2, rng));
        std::vector<RingElement<RealApprox>> args;
        args.reserve(static_cast<std::size_t>(inner_arity));
        for (int i = 0; i < inner_arity; ++i) args.push_back(random_real_element(ring, rng));
        try {
            const RingElement<RealApprox> lhs = interp(SmoothExpr::compose(outer, inners), args);
            std::vector<RingElement<RealApprox>> mids;
            mids.reserve(inners.size());
            for (const SmoothExpr& g : inners) mids.push_back(interp(g, args));
            const RingElement<RealApprox> rhs = interp(outer, mids);
            bool ok = true;
            for (std::size_t s = 0; s < ring.size() && ok; ++s) {
                const double l = lhs[s].value;
                const double rv = rhs[s].value;
                ok = std::abs(l - rv) <= tolerance * (1.0 + std::max(std::abs(l), std::abs(rv)));
            }
            r.require_lazy(ok, [&] {
                return "composite and composed interpretations differ beyond tolerance for " +
                       SmoothExpr::compose(outer, inners).str();
            });
            ++done;
        } catch (const DomainError&) {
            ++skipped; // resample: the next attempt draws fresh randomness
        }
    }
    if (done < samples)
        r.fail("could not draw enough in-domain samples (" + std::to_string(done) + " of " +
               std::to_string(samples) + ")");
    else if (skipped > 0)
        r.warn(std::to_string(skipped) + " sample(s) left the domain and were redrawn");
    return r;
}

} // namespace stonevn
