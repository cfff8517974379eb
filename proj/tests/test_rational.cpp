#include <doctest.h>

#include <cmath>

#include "stonevn/errors.hpp"
#include "stonevn/rational.hpp"

using namespace stonevn;

TEST_CASE("rational arithmetic is exact") {
    const Rational half = Rational::parse("1/2");
    const Rational third = Rational::parse("1/3");
    CHECK(half + third == Rational::parse("5/6"));
    CHECK(Rational::parse("-3") * Rational::parse("-1/3") == Rational::one());
    CHECK(inverse(Rational::parse("-4/7")) == Rational::parse("-7/4"));
    CHECK(half - half == Rational::zero());
    CHECK(-half == Rational::parse("-1/2"));
}

TEST_CASE("rational field laws on small values") {
    std::vector<Rational> values;
    for (int num = -3; num <= 3; ++num)
        for (int den = 1; den <= 3; ++den)
            values.push_back(Rational::parse(std::to_string(num) + "/" + std::to_string(den)));

    for (const auto& a : values) {
        CHECK(a + Rational::zero() == a);
        CHECK(a * Rational::one() == a);
        CHECK(a + (-a) == Rational::zero());
        if (!a.is_zero()) CHECK(a * inverse(a) == Rational::one());
        for (const auto& b : values) {
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            for (const auto& c : values) {
                CHECK((a + b) + c == a + (b + c));
                CHECK((a * b) * c == a * (b * c));
                CHECK(a * (b + c) == a * b + a * c);
            }
        }
    }
}

TEST_CASE("rational normalization and ordering") {
    CHECK(Rational::parse("2/4") == Rational::parse("1/2"));
    CHECK(Rational::parse("-2/-4") == Rational::parse("1/2"));
    CHECK(Rational::parse("0/5") == Rational::zero());
    CHECK(Rational::parse("1/3") < Rational::parse("1/2"));
    CHECK(Rational::parse("-1/2") < Rational::parse("-1/3"));
}

TEST_CASE("rational parse and serialize round trip") {
    for (const char* text : {"0", "1", "-1", "1/2", "-22/7", "123456789123456789/2",
                             "99999999999999999999999999"}) {
        const Rational r = Rational::parse(text);
        CHECK(Rational::parse(r.str()) == r);
        CHECK(r.str() == Rational::parse(r.str()).str());
    }
    CHECK(Rational::parse("2/4").str() == "1/2");
    CHECK(Rational::parse("-0").str() == "0");
}

TEST_CASE("rational parse rejects malformed input") {
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
    CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), ParseError);
    CHECK_THROWS_AS(inverse(Rational::zero()), DomainError);
}

TEST_CASE("big numerators survive arithmetic exactly") {
    Rational big = Rational::one();
    const Rational two = Rational::parse("2");
    for (int i = 0; i < 200; ++i) big = big * two;
    Rational back = big;
    for (int i = 0; i < 200; ++i) back = back * inverse(two);
    CHECK(back == Rational::one());
    CHECK(big.str().size() > 60); // 2^200 has 61 digits
}

TEST_CASE("real backend wraps doubles and rejects non-finite values") {
    const RealApprox x = RealApprox::parse("1.5");
    CHECK(x + x == RealApprox::parse("3"));
    CHECK((x * inverse(x)).is_one());
    CHECK_THROWS_AS(inverse(RealApprox::zero()), DomainError);
    CHECK_THROWS_AS(RealApprox::parse("1e400"), ParseError); // overflows to infinity
    CHECK_THROWS_AS(RealApprox::parse("nan"), ParseError);
}

TEST_CASE("real backend serialization round trips bit-for-bit") {
    for (const char* text : {"0.1", "-2.5", "3.141592653589793", "1e-300"}) {
        const RealApprox r = RealApprox::parse(text);
        const RealApprox again = RealApprox::parse(r.str());
        CHECK(again == r);
        CHECK(again.str() == r.str());
    }
}
