#include <doctest.h>

#include <cmath>
#include <vector>

#include "stonevn/errors.hpp"
#include "stonevn/rng.hpp"
#include "stonevn/smooth_expr.hpp"

using namespace stonevn;

namespace {

// Frozen reference values, independent of the evaluator: e and e^4 to the
// last printed digit of the double closest to them.
constexpr double kE = 2.718281828459045;
constexpr double kEFourth = 54.598150033144236;

bool close_rel(double got, double want, double tol) {
    return std::fabs(got - want) <= tol * (1.0 + std::fabs(want));
}

} // namespace

TEST_CASE("evaluation matches hand-computed values") {
    const SmoothExpr x1 = SmoothExpr::variable(2, 1);
    const SmoothExpr x2 = SmoothExpr::variable(2, 2);
    const SmoothExpr f = SmoothExpr::primitive(SmoothExpr::Primitive::sin, x1) + x2;
    CHECK(f.eval(std::vector<double>{0.0, 1.0}).to_double() == 1.0);

    const SmoothExpr y = SmoothExpr::variable(1, 1);
    const SmoothExpr g = SmoothExpr::primitive(SmoothExpr::Primitive::exp, y * y);
    CHECK(close_rel(g.eval(std::vector<double>{2.0}).to_double(), kEFourth, 1e-12));
    CHECK(close_rel(
        SmoothExpr::primitive(SmoothExpr::Primitive::exp, y).eval(std::vector<double>{1.0}).to_double(),
        kE, 1e-12));
}

TEST_CASE("composition substitutes componentwise") {
    // h(u, v) = u * v composed with (x + 1, x) gives x^2 + x.
    const SmoothExpr u = SmoothExpr::variable(2, 1);
    const SmoothExpr v = SmoothExpr::variable(2, 2);
    const SmoothExpr x = SmoothExpr::variable(1, 1);
    const SmoothExpr one = SmoothExpr::constant(1, Rational::one());
    const SmoothExpr composite = SmoothExpr::compose(u * v, {x + one, x});
    REQUIRE(composite.arity() == 1);
    for (double t : {-2.0, -0.5, 0.0, 1.0, 3.25})
        CHECK(composite.eval(std::vector<double>{t}).to_double() == (t + 1.0) * t);
}

TEST_CASE("composition validates arities") {
    const SmoothExpr u = SmoothExpr::variable(2, 1);
    const SmoothExpr x = SmoothExpr::variable(1, 1);
    const SmoothExpr y3 = SmoothExpr::variable(3, 1);
    CHECK_THROWS_AS(SmoothExpr::compose(u * u, {x}), ContractError);        // needs 2 inners
    CHECK_THROWS_AS(SmoothExpr::compose(u, {x, y3}), ContractError);        // mixed inner arities
    CHECK_THROWS_AS(SmoothExpr::variable(2, 3), ContractError);             // index out of range
    CHECK_THROWS_AS(SmoothExpr::variable(2, 0), ContractError);             // indices are 1-based
}

TEST_CASE("evaluation rejects wrong point arity and non-finite results") {
    const SmoothExpr x = SmoothExpr::variable(2, 1);
    CHECK_THROWS_AS(x.eval(std::vector<double>{1.0}), ContractError);
    const SmoothExpr big = SmoothExpr::constant(1, Rational::parse("1000"));
    const SmoothExpr exp_big = SmoothExpr::primitive(SmoothExpr::Primitive::exp, big);
    CHECK_THROWS_AS(exp_big.eval(std::vector<double>{0.0}), DomainError); // e^1000 overflows
}

TEST_CASE("parser round trips the printed form") {
    const SmoothExpr x1 = SmoothExpr::variable(3, 1);
    const SmoothExpr x3 = SmoothExpr::variable(3, 3);
    const SmoothExpr f =
        SmoothExpr::primitive(SmoothExpr::Primitive::atan, x1 * x3 - SmoothExpr::constant(3, Rational::parse("2/3")));
    const SmoothExpr g = SmoothExpr::parse(f.str(), 3);
    CHECK(g.str() == f.str());
    CHECK(g.eval(std::vector<double>{0.5, 9.0, -1.25}).to_double() ==
          f.eval(std::vector<double>{0.5, 9.0, -1.25}).to_double());
}

TEST_CASE("parser rejects malformed expressions") {
    CHECK_THROWS_AS(SmoothExpr::parse("x1 +"), ParseError);
    CHECK_THROWS_AS(SmoothExpr::parse("frob(x1)"), ParseError);
    CHECK_THROWS_AS(SmoothExpr::parse("(x1"), ParseError);
    CHECK_THROWS_AS(SmoothExpr::parse(""), ParseError);
    CHECK_THROWS_AS(SmoothExpr::parse("x2", 1), ContractError); // variable above declared arity
}

TEST_CASE("random expressions are deterministic per seed and within arity") {
    Rng rng_a(42);
    Rng rng_b(42);
    for (int i = 0; i < 50; ++i) {
        const SmoothExpr a = SmoothExpr::random(3, 3, rng_a);
        const SmoothExpr b = SmoothExpr::random(3, 3, rng_b);
        CHECK(a.str() == b.str());
        CHECK(a.arity() == 3);
    }
    Rng rng_c(43);
    bool any_difference = false;
    Rng rng_a2(42);
    for (int i = 0; i < 50; ++i)
        if (SmoothExpr::random(3, 3, rng_a2).str() != SmoothExpr::random(3, 3, rng_c).str())
            any_difference = true;
    CHECK(any_difference);
}
