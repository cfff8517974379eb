#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stonevn/rational.hpp"
#include "stonevn/rng.hpp"

namespace stonevn {

// Expression tree denoting a total smooth function R^arity -> R.
//
// Grammar: variables x1..xn, rational constants, binary + - *, the unary
// primitives exp/sin/cos/atan, and an explicit composition node
// outer(inner_1, ..., inner_k). Division is deliberately absent, and every
// primitive is total, so evaluation never hits a partial function; the only
// failure mode on finite inputs is floating-point overflow, which surfaces
// as DomainError via the RealApprox invariant.
//
// Values are immutable and cheap to copy (shared subtree storage).
class SmoothExpr {
public:
    enum class Primitive { exp, sin, cos, atan };

    struct Node; // opaque tree node; defined in the implementation file

    // x_k inside R^arity; k is 1-based and must satisfy 1 <= k <= arity.
    static SmoothExpr variable(int arity, int index);

    static SmoothExpr constant(int arity, Rational value);

    // The k-th coordinate projection of R^arity — same tree as variable(),
    // named separately because it is the nullary-composition unit.
    static SmoothExpr projection(int arity, int index) { return variable(arity, index); }

    static SmoothExpr primitive(Primitive fn, const SmoothExpr& inner);

    // outer must have arity == inner.size(); all inner expressions must share
    // one arity, which becomes the arity of the composite.
    static SmoothExpr compose(const SmoothExpr& outer, const std::vector<SmoothExpr>& inner);

    friend SmoothExpr operator+(const SmoothExpr& a, const SmoothExpr& b);
    friend SmoothExpr operator-(const SmoothExpr& a, const SmoothExpr& b);
    friend SmoothExpr operator*(const SmoothExpr& a, const SmoothExpr& b);

    int arity() const { return arity_; }

    // point.size() must equal arity().
    RealApprox eval(std::span<const RealApprox> point) const;
    RealApprox eval(const std::vector<double>& point) const;

    // Diagnostic rendering; parseable except for explicit composition nodes,
    // which print in applied form outer@(g1, ..., gk).
    std::string str() const;

    // Infix syntax: "exp(x1*x1) + 3/2*x2 - sin(x3)". When declared_arity is
    // absent the arity is inferred as max(1, highest variable index).
    static SmoothExpr parse(std::string_view text, std::optional<int> declared_arity = std::nullopt);

    // Deterministic per Rng state; weights keep towers of exp shallow so
    // random samples mostly stay in floating range.
    static SmoothExpr random(int arity, int depth, Rng& rng);

private:
    SmoothExpr(std::shared_ptr<const Node> node, int arity)
        : node_(std::move(node)), arity_(arity) {}

    std::shared_ptr<const Node> node_;
    int arity_ = 1;
};

const char* primitive_name(SmoothExpr::Primitive fn);

} // namespace stonevn
