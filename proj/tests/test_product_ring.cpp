#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "stonevn/errors.hpp"
#include "stonevn/product_ring.hpp"
#include "stonevn/ring_checks.hpp"
#include "stonevn/rng.hpp"
#include "stonevn/sampling.hpp"

using namespace stonevn;

namespace {

ProductRing<Rational> q3() { return indexed_ring<Rational>(3); }

RingElement<Rational> el(const ProductRing<Rational>& ring, const std::vector<const char*>& vals) {
    std::vector<Rational> coords;
    coords.reserve(vals.size());
    for (const char* v : vals) coords.push_back(Rational::parse(v));
    return ring.element(std::move(coords));
}

} // namespace

TEST_CASE("quasi-inverse matches the componentwise oracle on the worked example") {
    const auto ring = q3();
    const auto a = el(ring, {"2", "0", "-3"});
    const auto b = quasi_inverse(a);
    CHECK(b == el(ring, {"1/2", "0", "-1/3"}));
    CHECK(b == oracles::componentwise_quasi_inverse(a));
    CHECK(a * a * b == a);
    CHECK(b * b * a == b);
}

TEST_CASE("quasi-inverse matches the oracle on a seeded corpus") {
    Rng rng(2024);
    for (std::size_t m = 0; m <= 8; ++m) {
        const auto ring = indexed_ring<Rational>(m);
        for (int i = 0; i < 200; ++i) {
            const auto a = random_rational_element(ring, rng);
            const auto b = quasi_inverse(a);
            CHECK(b == oracles::componentwise_quasi_inverse(a));
            CHECK(a * a * b == a);
            CHECK(b * b * a == b);
        }
    }
}

TEST_CASE("minimal witness recovers the quasi-inverse from any square witness") {
    const auto ring = indexed_ring<Rational>(2);
    const auto a = el(ring, {"2", "0"});
    // x = (1/2, 7) also satisfies a = a*a*x: off the support anything goes.
    const auto x = el(ring, {"1/2", "7"});
    CHECK(a * a * x == a);
    CHECK(minimal_quasi_inverse_witness(a, x) == el(ring, {"1/2", "0"}));
    // A non-witness is rejected.
    CHECK_THROWS_AS(minimal_quasi_inverse_witness(a, el(ring, {"1", "0"})), ContractError);
}

TEST_CASE("idempotent generator with both ideal witnesses") {
    const auto ring = q3();
    const auto a = el(ring, {"2", "0", "-3"});
    const auto w = idempotent_of(a);
    CHECK(w.generator.value == el(ring, {"1", "0", "1"}));
    CHECK(w.generator.value * w.y == a);
    CHECK(a * w.z == w.generator.value);

    const auto report = regularity_witness_check(a);
    CHECK(report.passed());
    CHECK(report.checks > 0);
}

TEST_CASE("idempotent enumeration is the full subset lattice") {
    const auto ring = q3();
    const auto es = idempotents(ring);
    REQUIRE(es.size() == 8);
    CHECK(es[0].value == ring.zero());
    CHECK(es[7].value == ring.one());
    CHECK(es[1].value == el(ring, {"1", "0", "0"})); // first point = low bit
    for (const auto& e : es) CHECK(e.value * e.value == e.value);
    CHECK_THROWS_AS(idempotents(indexed_ring<Rational>(6), 5), ResourceError);

    CHECK_THROWS_AS(Idempotent<Rational>::of(el(ring, {"2", "0", "0"})), ContractError);
}

TEST_CASE("the trivial ring is consistent") {
    const ProductRing<Rational> ring;
    CHECK(ring.size() == 0);
    CHECK(ring.zero() == ring.one()); // 0 = 1 in the trivial ring
    CHECK(quasi_inverse(ring.zero()) == ring.zero());
    CHECK(idempotents(ring).size() == 1);
    CHECK(prime_points(ring).empty());
}

TEST_CASE("localization collapses the complement of the support") {
    const auto ring = q3();
    const auto a = el(ring, {"2", "0", "-3"});
    const auto loc = localize_at_element(ring, a);
    CHECK(loc.ring.points == std::vector<std::string>{"s1", "s3"});
    CHECK(is_unit(loc.map(a)));
    // Kernel is the ideal of the complementary idempotent: (0,1,0) dies.
    CHECK(loc.map(el(ring, {"0", "1", "0"})).is_zero());
    CHECK(!loc.map(el(ring, {"1", "0", "0"})).is_zero());

    // A unit localizes to an isomorphic copy; zero localizes to the trivial ring.
    CHECK(localize_at_element(ring, el(ring, {"1", "2", "3"})).ring.size() == 3);
    CHECK(localize_at_element(ring, ring.zero()).ring.size() == 0);

    Rng rng(5);
    const auto gen = rational_gen();
    for (const auto& e : idempotents(ring))
        CHECK(localization_check(ring, e, rng, gen, 8).passed());
    CHECK(localization_universal_check(ring, a, rng, 8).passed());
}

TEST_CASE("spectrum classification agrees with exhaustive ideal enumeration") {
    const auto ring = q3();
    const auto classification = classify_ideals(ring);
    // Frozen expectation for three points: the proper ideals closed under the
    // ring's idempotent supports are the subsets of S; primes are exactly the
    // co-singletons (allowed-support masks missing exactly one point).
    REQUIRE(classification.prime_supports.size() == 3);
    CHECK(classification.prime_supports == classification.maximal_supports);
    for (const std::uint64_t mask : classification.prime_supports) {
        std::size_t missing = 0;
        for (std::size_t bit = 0; bit < ring.size(); ++bit)
            if ((mask >> bit & 1) == 0) ++missing;
        CHECK(missing == 1);
    }
    CHECK(spectrum_collapse_check(ring).passed());
    CHECK(spectrum(ring).points == ring.points);
}

TEST_CASE("reducedness fails for a mock ring with dual numbers") {
    // K[x]/(x^2) as pairs (a, b) = a + b eps with eps^2 = 0: the scan must
    // catch eps itself. This guards the scan against vacuous passes.
    using Dual = std::pair<double, double>;
    const std::vector<Dual> elements = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {2.0, 3.0}};
    const auto mul = [](const Dual& a, const Dual& b) {
        return Dual{a.first * b.first, a.first * b.second + a.second * b.first};
    };
    const auto is_zero = [](const Dual& a) { return a.first == 0.0 && a.second == 0.0; };
    const auto report = nilpotent_scan(elements, mul, is_zero);
    CHECK(!report.passed());
    CHECK(report.failures == 1); // exactly eps = (0, 1)

    // The genuine product ring passes the same scan.
    Rng rng(7);
    CHECK(reducedness_check(q3(), rng, rational_gen(), 64).passed());
}

TEST_CASE("residue fields at every prime are copies of the scalars") {
    const auto ring = q3();
    Rng rng(11);
    const auto gen = rational_gen();
    for (const auto& p : prime_points(ring))
        CHECK(residue_field_check(ring, p.index, rng, gen).passed());
}

TEST_CASE("homs act by precomposition on coordinates") {
    const auto dom = q3();
    const auto cod = indexed_ring<Rational>(2, "t");
    // dual picks s1 for t1 and s1 for t2: f(a) = (a_{s1}, a_{s1}).
    const RingHom<Rational> f(dom, cod, {0, 0});
    const auto a = el(dom, {"1", "0", "0"});
    CHECK(f(a) == cod.one());
    CHECK(f(el(dom, {"0", "5", "7"})) == cod.zero());

    // Ring hom laws and functoriality of composition.
    const auto b = el(dom, {"2", "3", "4"});
    CHECK(f(a + b) == f(a) + f(b));
    CHECK(f(a * b) == f(a) * f(b));
    CHECK(f(dom.one()) == cod.one());

    const auto cod2 = indexed_ring<Rational>(1, "u");
    const RingHom<Rational> g(cod, cod2, {1});
    CHECK(compose(g, f).dual_map == std::vector<std::size_t>{0});
    CHECK(compose(g, f)(b) == g(f(b)));

    // Spectrum is contravariant.
    const auto sf = spectrum_map(f);
    CHECK(sf.domain.points == cod.points);
    CHECK(sf.codomain.points == dom.points);
}

TEST_CASE("equalizers are computed honestly and closed under the operations") {
    const auto dom = indexed_ring<Rational>(2);
    const auto cod = indexed_ring<Rational>(1, "t");
    const RingHom<Rational> f(dom, cod, {0});
    const RingHom<Rational> g(dom, cod, {1});
    const auto eq = equalizer(f, g);
    // E = the diagonal.
    CHECK(eq.contains(el(dom, {"5", "5"})));
    CHECK(!eq.contains(el(dom, {"5", "6"})));
    CHECK(eq.class_count == 1);
    CHECK(eq.contains(quasi_inverse(el(dom, {"5", "5"}))));

    Rng rng(3);
    const auto gen = rational_gen();
    CHECK(equalizer_closure_check(eq, rng, gen, 40).passed());

    // f = g means everything is in the equalizer.
    const auto all = equalizer(f, f);
    CHECK(all.contains(el(dom, {"1", "2"})));
}

TEST_CASE("interpreting expressions over the float backend satisfies the axioms") {
    const auto ring = indexed_ring<RealApprox>(3, "x");
    Rng rng(17);
    CHECK(projection_axiom_check(ring, 100, rng).passed());
    CHECK(composition_axiom_check(ring, 100, 1e-9, rng).passed());
}

TEST_CASE("corrupted interpreters are caught by the axiom checks") {
    const auto ring = indexed_ring<RealApprox>(2, "x");

    // Projections that return the wrong argument index.
    const RealInterpreter swap_args = [](const SmoothExpr& f,
                                         const std::vector<RingElement<RealApprox>>& args) {
        std::vector<RingElement<RealApprox>> permuted = args;
        if (permuted.size() >= 2) std::swap(permuted[0], permuted[1]);
        return interpret(f, permuted);
    };
    Rng rng_a(23);
    CHECK(!projection_axiom_check(ring, 100, rng_a, swap_args).passed());

    // Interpretation with a constant absolute error breaks composition.
    const RealInterpreter biased = [](const SmoothExpr& f,
                                      const std::vector<RingElement<RealApprox>>& args) {
        auto result = interpret(f, args);
        const RealApprox bump{1e-3};
        std::vector<RealApprox> coords(result.coords.begin(), result.coords.end());
        for (auto& c : coords) c = c + bump;
        return result.owner.element(std::move(coords));
    };
    Rng rng_b(29);
    CHECK(!composition_axiom_check(ring, 100, 1e-9, rng_b, biased).passed());
}
