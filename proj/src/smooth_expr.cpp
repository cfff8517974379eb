#include "stonevn/smooth_expr.hpp"

#include <cctype>
#include <cmath>

#include "stonevn/errors.hpp"

namespace stonevn {

struct SmoothExpr::Node {
    enum class Kind { variable, constant, add, sub, mul, primitive, compose };

    Kind kind;
    int var_index = 0;                          // variable
    Rational value;                             // constant
    Primitive fn = Primitive::exp;              // primitive
    std::shared_ptr<const Node> lhs, rhs;       // add/sub/mul; primitive uses lhs
    std::shared_ptr<const Node> outer;          // compose
    std::vector<std::shared_ptr<const Node>> inner;
};

namespace {

using Node = SmoothExpr::Node;
using Kind = Node::Kind;

double eval_node(const Node& n, std::span<const double> point) {
    switch (n.kind) {
    case Kind::variable:
        return point[static_cast<std::size_t>(n.var_index - 1)];
    case Kind::constant:
        return n.value.to_double();
    case Kind::add:
        return eval_node(*n.lhs, point) + eval_node(*n.rhs, point);
    case Kind::sub:
        return eval_node(*n.lhs, point) - eval_node(*n.rhs, point);
    case Kind::mul:
        return eval_node(*n.lhs, point) * eval_node(*n.rhs, point);
    case Kind::primitive: {
        const double v = eval_node(*n.lhs, point);
        switch (n.fn) {
        case SmoothExpr::Primitive::exp:  return std::exp(v);
        case SmoothExpr::Primitive::sin:  return std::sin(v);
        case SmoothExpr::Primitive::cos:  return std::cos(v);
        case SmoothExpr::Primitive::atan: return std::atan(v);
        }
        break;
    }
    case Kind::compose: {
        std::vector<double> mid(n.inner.size());
        for (std::size_t i = 0; i < n.inner.size(); ++i)
            mid[i] = eval_node(*n.inner[i], point);
        return eval_node(*n.outer, mid);
    }
    }
    throw ContractError("corrupt expression node");
}

std::string render(const Node& n) {
    switch (n.kind) {
    case Kind::variable:
        return "x" + std::to_string(n.var_index);
    case Kind::constant: {
        std::string s = n.value.str();
        // Negative or fractional literals get parenthesized so the rendering
        // re-parses without precedence surprises.
        if (s.find('/') != std::string::npos || (!s.empty() && s[0] == '-')) return "(" + s + ")";
        return s;
    }
    case Kind::add:
        return "(" + render(*n.lhs) + " + " + render(*n.rhs) + ")";
    case Kind::sub:
        return "(" + render(*n.lhs) + " - " + render(*n.rhs) + ")";
    case Kind::mul:
        return "(" + render(*n.lhs) + "*" + render(*n.rhs) + ")";
    case Kind::primitive:
        return std::string(primitive_name(n.fn)) + "(" + render(*n.lhs) + ")";
    case Kind::compose: {
        std::string s = render(*n.outer) + "@(";
        for (std::size_t i = 0; i < n.inner.size(); ++i) {
            if (i) s += ", ";
            s += render(*n.inner[i]);
        }
        return s + ")";
    }
    }
    return "?";
}

} // namespace

const char* primitive_name(SmoothExpr::Primitive fn) {
    switch (fn) {
    case SmoothExpr::Primitive::exp:  return "exp";
    case SmoothExpr::Primitive::sin:  return "sin";
    case SmoothExpr::Primitive::cos:  return "cos";
    case SmoothExpr::Primitive::atan: return "atan";
    }
    return "?";
}

SmoothExpr SmoothExpr::variable(int arity, int index) {
    if (arity < 1) throw ContractError("expression arity must be positive");
    if (index < 1 || index > arity)
        throw ContractError("variable x" + std::to_string(index) + " outside arity " +
                            std::to_string(arity));
    auto n = std::make_shared<Node>();
    n->kind = Kind::variable;
    n->var_index = index;
    return SmoothExpr(std::move(n), arity);
}

SmoothExpr SmoothExpr::constant(int arity, Rational value) {
    if (arity < 1) throw ContractError("expression arity must be positive");
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->value = std::move(value);
    return SmoothExpr(std::move(n), arity);
}

SmoothExpr SmoothExpr::primitive(Primitive fn, const SmoothExpr& inner) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::primitive;
    n->fn = fn;
    n->lhs = inner.node_;
    return SmoothExpr(std::move(n), inner.arity_);
}

SmoothExpr SmoothExpr::compose(const SmoothExpr& outer, const std::vector<SmoothExpr>& inner) {
    if (static_cast<std::size_t>(outer.arity_) != inner.size())
        throw ContractError("composition arity mismatch: outer expects " +
                            std::to_string(outer.arity_) + " arguments, got " +
                            std::to_string(inner.size()));
    const int arity = inner.front().arity_; // outer arity >= 1, so inner is nonempty
    for (const auto& g : inner)
        if (g.arity_ != arity)
            throw ContractError("composition inner expressions disagree on arity");
    auto n = std::make_shared<Node>();
    n->kind = Kind::compose;
    n->outer = outer.node_;
    n->inner.reserve(inner.size());
    for (const auto& g : inner) n->inner.push_back(g.node_);
    return SmoothExpr(std::move(n), arity);
}

namespace {

std::shared_ptr<const Node> binary_node(Kind kind, const std::shared_ptr<const Node>& lhs,
                                        const std::shared_ptr<const Node>& rhs) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = lhs;
    n->rhs = rhs;
    return n;
}

} // namespace

// Both operands of a binary node must live over the same R^n.
SmoothExpr operator+(const SmoothExpr& a, const SmoothExpr& b) {
    if (a.arity_ != b.arity_) throw ContractError("operands have different arities");
    return SmoothExpr(binary_node(Kind::add, a.node_, b.node_), a.arity_);
}

SmoothExpr operator-(const SmoothExpr& a, const SmoothExpr& b) {
    if (a.arity_ != b.arity_) throw ContractError("operands have different arities");
    return SmoothExpr(binary_node(Kind::sub, a.node_, b.node_), a.arity_);
}

SmoothExpr operator*(const SmoothExpr& a, const SmoothExpr& b) {
    if (a.arity_ != b.arity_) throw ContractError("operands have different arities");
    return SmoothExpr(binary_node(Kind::mul, a.node_, b.node_), a.arity_);
}

RealApprox SmoothExpr::eval(std::span<const RealApprox> point) const {
    if (point.size() != static_cast<std::size_t>(arity_))
        throw ContractError("eval: point has " + std::to_string(point.size()) +
                            " coordinates, expression arity is " + std::to_string(arity_));
    std::vector<double> raw(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) raw[i] = point[i].value;
    return RealApprox(eval_node(*node_, raw)); // RealApprox rejects non-finite results
}

RealApprox SmoothExpr::eval(const std::vector<double>& point) const {
    if (point.size() != static_cast<std::size_t>(arity_))
        throw ContractError("eval: point has " + std::to_string(point.size()) +
                            " coordinates, expression arity is " + std::to_string(arity_));
    return RealApprox(eval_node(*node_, point));
}

std::string SmoothExpr::str() const { return render(*node_); }

// ---------------------------------------------------------------------------
// Parser: recursive descent over
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := '-' factor | primary
//   primary := RATIONAL | VARIABLE | NAME '(' expr ')' | '(' expr ')'
// A '/' may only appear inside a rational literal (INT '/' INT); there is no
// division operator.
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;
    int max_var = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) { ++pos; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void bail(const std::string& message) { throw ParseError(message, pos); }

    std::string integer_literal() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) bail("expected integer");
        return std::string(text.substr(start, pos - start));
    }

    std::string name() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
        return std::string(text.substr(start, pos - start));
    }

    // Raw parse tree carrying no arity yet; variables record their index and
    // the final arity is fixed once the whole expression is read.
    struct Raw {
        std::shared_ptr<Node> node;
    };

    std::shared_ptr<Node> make(Kind k) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        return n;
    }

    std::shared_ptr<Node> expr() {
        auto lhs = term();
        while (true) {
            if (eat('+')) {
                auto n = make(Kind::add);
                n->lhs = lhs; n->rhs = term();
                lhs = n;
            } else if (eat('-')) {
                auto n = make(Kind::sub);
                n->lhs = lhs; n->rhs = term();
                lhs = n;
            } else {
                return lhs;
            }
        }
    }

    std::shared_ptr<Node> term() {
        auto lhs = factor();
        while (true) {
            const char c = peek();
            if (c == '*') {
                ++pos;
                auto n = make(Kind::mul);
                n->lhs = lhs; n->rhs = factor();
                lhs = n;
            } else if (c == '/') {
                bail("'/' is only valid inside a rational constant; division is not in the language");
            } else {
                return lhs;
            }
        }
    }

    std::shared_ptr<Node> factor() {
        if (eat('-')) {
            // -f is sugar for (0 - f)
            auto n = make(Kind::sub);
            auto z = make(Kind::constant);
            z->value = Rational::zero();
            n->lhs = z; n->rhs = factor();
            return n;
        }
        return primary();
    }

    std::shared_ptr<Node> primary() {
        skip_ws();
        if (pos >= text.size()) bail("unexpected end of expression");
        const char c = text[pos];

        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = integer_literal();
            std::string lit = num;
            if (peek() == '/') { // rational constant p/q
                ++pos;
                lit += "/" + integer_literal();
            }
            auto n = make(Kind::constant);
            n->value = Rational::parse(lit);
            return n;
        }

        if (c == '(') {
            ++pos;
            auto inner = expr();
            if (!eat(')')) bail("expected ')'");
            return inner;
        }

        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t at = pos;
            std::string id = name();
            if (id.size() >= 2 && id[0] == 'x' &&
                std::isdigit(static_cast<unsigned char>(id[1]))) {
                int idx = 0;
                for (std::size_t i = 1; i < id.size(); ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(id[i]))) {
                        pos = at;
                        bail("bad variable name '" + id + "'");
                    }
                    idx = idx * 10 + (id[i] - '0');
                }
                if (idx < 1) { pos = at; bail("variable indices start at x1"); }
                auto n = make(Kind::variable);
                n->var_index = idx;
                max_var = std::max(max_var, idx);
                return n;
            }
            SmoothExpr::Primitive fn;
            if (id == "exp") fn = SmoothExpr::Primitive::exp;
            else if (id == "sin") fn = SmoothExpr::Primitive::sin;
            else if (id == "cos") fn = SmoothExpr::Primitive::cos;
            else if (id == "atan") fn = SmoothExpr::Primitive::atan;
            else { pos = at; bail("unknown function '" + id + "'"); }
            if (!eat('(')) bail("expected '(' after " + id);
            auto n = make(Kind::primitive);
            n->fn = fn;
            n->lhs = expr();
            if (!eat(')')) bail("expected ')'");
            return n;
        }

        bail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

SmoothExpr SmoothExpr::parse(std::string_view text, std::optional<int> declared_arity) {
    Parser p{text};
    auto root = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.bail("trailing input");
    int arity = std::max(1, p.max_var);
    if (declared_arity) {
        if (*declared_arity < p.max_var)
            throw ContractError("declared arity " + std::to_string(*declared_arity) +
                                " below highest variable x" + std::to_string(p.max_var));
        if (*declared_arity < 1) throw ContractError("expression arity must be positive");
        arity = *declared_arity;
    }
    return SmoothExpr(std::move(root), arity);
}

// ---------------------------------------------------------------------------
// Random generation
// ---------------------------------------------------------------------------

SmoothExpr SmoothExpr::random(int arity, int depth, Rng& rng) {
    if (arity < 1) throw ContractError("expression arity must be positive");
    if (depth <= 0) {
        // Leaf: mostly variables, sometimes a small constant.
        if (rng.chance(3, 4))
            return variable(arity, static_cast<int>(rng.int_in(1, arity)));
        return constant(arity, Rational(rng.int_in(-3, 3), rng.int_in(1, 3)));
    }
    switch (rng.below(8)) {
    case 0:
    case 1:
        return random(arity, 0, rng);
    case 2:
        return random(arity, depth - 1, rng) + random(arity, depth - 1, rng);
    case 3:
        return random(arity, depth - 1, rng) - random(arity, depth - 1, rng);
    case 4:
        return random(arity, depth - 1, rng) * random(arity, depth - 1, rng);
    case 5: {
        // sin/cos/atan freely; exp with reduced weight, and never exp(exp)
        // directly — deep exp towers leave double range too easily.
        const std::size_t pick = rng.below(7);
        const Primitive fn = pick < 2   ? Primitive::sin
                             : pick < 4 ? Primitive::cos
                             : pick < 6 ? Primitive::atan
                                        : Primitive::exp;
        return primitive(fn, random(arity, depth - 1, rng));
    }
    default: {
        // Explicit composition: outer over a fresh variable set.
        const int n = static_cast<int>(rng.int_in(1, 2));
        SmoothExpr outer = random(n, depth - 1, rng);
        std::vector<SmoothExpr> inner;
        inner.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) inner.push_back(random(arity, depth - 1, rng));
        return compose(outer, inner);
    }
    }
}

} // namespace stonevn
