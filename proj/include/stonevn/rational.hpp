#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <compare>
#include <concepts>
#include <string>
#include <string_view>

#include "stonevn/errors.hpp"

namespace stonevn {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar with arbitrary-precision numerator and denominator.
// Canonical form is maintained by the backing representation after every
// operation: fully reduced, denominator strictly positive, zero stored as
// 0/1. Equality is therefore structural equality of the reduced form.
class Rational {
public:
    Rational() = default; // zero
    Rational(long long n) : v_(n) {}
    explicit Rational(const BigInt& n) : v_(n) {}

    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw DomainError("rational with zero denominator");
        // The backing constructor reduces the gcd but insists on a positive
        // denominator, so move the sign to the numerator first.
        if (den < 0)
            v_ = Backing(BigInt(-num), BigInt(-den));
        else
            v_ = Backing(num, den);
    }

    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1); }

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
    friend Rational operator-(const Rational& a) { return Rational(-a.v_); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    // Multiplicative inverse; zero has none.
    friend Rational inverse(const Rational& a) {
        if (a.is_zero()) throw DomainError("division by zero: 0 has no inverse");
        return Rational(1 / a.v_);
    }

    // "p" when the denominator is 1, "p/q" otherwise. This is the canonical
    // wire form; parse() accepts exactly these shapes (and normalizes a
    // negative or unreduced input fraction).
    std::string str() const {
        std::string s = numerator().str();
        if (denominator() != 1) s += "/" + denominator().str();
        return s;
    }

    static Rational parse(std::string_view text) {
        if (text.empty()) throw ParseError("empty rational literal");
        const auto slash = text.find('/');
        BigInt num, den = 1;
        try {
            num = BigInt(std::string(text.substr(0, slash))); // whole string when no '/'
            if (slash != std::string_view::npos) den = BigInt(std::string(text.substr(slash + 1)));
        } catch (const std::runtime_error&) {
            throw ParseError(std::string("bad rational literal '") + std::string(text) + "'");
        }
        if (den == 0)
            throw ParseError(std::string("zero denominator in '") + std::string(text) + "'");
        return Rational(num, den);
    }

    double to_double() const { return v_.convert_to<double>(); }

private:
    using Backing = boost::multiprecision::cpp_rational;
    explicit Rational(Backing v) : v_(std::move(v)) {}
    Backing v_;
};

// Double-precision stand-in for the real scalar. Every exposed operation
// either yields a finite value or reports DomainError; infinities and NaN
// never leak out.
struct RealApprox {
    double value = 0.0;

    RealApprox() = default;
    RealApprox(double v) : value(v) {
        if (!std::isfinite(v)) throw DomainError("non-finite real scalar");
    }

    static RealApprox zero() { return RealApprox(); }
    static RealApprox one() { return RealApprox(1.0); }

    bool is_zero() const { return value == 0.0; }
    bool is_one() const { return value == 1.0; }

    friend RealApprox operator+(RealApprox a, RealApprox b) { return RealApprox(a.value + b.value); }
    friend RealApprox operator-(RealApprox a, RealApprox b) { return RealApprox(a.value - b.value); }
    friend RealApprox operator*(RealApprox a, RealApprox b) { return RealApprox(a.value * b.value); }
    friend RealApprox operator-(RealApprox a) { return RealApprox(-a.value); }

    friend bool operator==(RealApprox a, RealApprox b) { return a.value == b.value; }
    friend bool operator!=(RealApprox a, RealApprox b) { return a.value != b.value; }

    friend RealApprox inverse(RealApprox a) {
        if (a.value == 0.0) throw DomainError("division by zero: 0 has no inverse");
        return RealApprox(1.0 / a.value);
    }

    // Shortest round-trip decimal form, so serialization is byte-stable.
    std::string str() const {
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
        (void)ec;
        return std::string(buf, end);
    }

    static RealApprox parse(std::string_view text) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw ParseError(std::string("bad real literal '") + std::string(text) + "'");
        if (!std::isfinite(v)) throw ParseError("non-finite real literal");
        return RealApprox(v);
    }

    double to_double() const { return value; }
};

// The scalar interface every coordinate field backend provides.
template <class K>
concept ScalarField = requires(const K& a, const K& b) {
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { inverse(a) } -> std::convertible_to<K>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
    { a.str() } -> std::convertible_to<std::string>;
    { K::zero() } -> std::convertible_to<K>;
    { K::one() } -> std::convertible_to<K>;
    { K::parse(std::string_view{}) } -> std::convertible_to<K>;
};

static_assert(ScalarField<Rational>);
static_assert(ScalarField<RealApprox>);

} // namespace stonevn
