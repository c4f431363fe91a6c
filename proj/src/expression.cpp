#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "flatfront/errors.hpp"
#include "flatfront/holo.hpp"

namespace flatfront {

struct Expression::Node {
    enum class Op { constant, var, add, sub, mul, div, neg, exp, log, pow };
    Op op = Op::constant;
    cplx c{};
    bool integer_exponent = false;
    long n = 0;
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;
using Op = Node::Op;

struct Context {
    cplx z;
    double branch;
};

[[noreturn]] void pole(const Context& ctx, const char* what) {
    throw EvaluationError(fmt::format("{} at z = {:.6g}{:+.6g}i", what, ctx.z.real(), ctx.z.imag()), ctx.z);
}

cplx branch_log(cplx w, const Context& ctx) {
    const double r = std::abs(w);
    if (r == 0.0) pole(ctx, "logarithm of zero");
    const double a = std::arg(w * std::polar(1.0, -ctx.branch));
    if (std::numbers::pi - std::abs(a) < kCutMargin) pole(ctx, "branch cut of log/pow reached");
    return {std::log(r), a + ctx.branch};
}

cplx ipow(cplx w, long n, const Context& ctx) {
    if (n < 0) {
        if (w == 0.0) pole(ctx, "pole of negative power");
        return 1.0 / ipow(w, -n, ctx);
    }
    cplx result = 1.0;
    cplx base = w;
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

// w^(e - k) for the node's exponent e.
cplx shifted_power(const Node& node, cplx w, int k, const Context& ctx) {
    if (node.integer_exponent) return ipow(w, node.n - k, ctx);
    return std::exp((node.c - static_cast<double>(k)) * branch_log(w, ctx));
}

cplx div_checked(cplx x, cplx y, const Context& ctx) {
    if (y == 0.0) pole(ctx, "division by zero");
    return x / y;
}

Jet div_checked(const Jet& x, const Jet& y, const Context& ctx) {
    if (y.d0 == 0.0) pole(ctx, "division by zero");
    return x / y;
}

cplx apply_exp(cplx w, const Context&) { return std::exp(w); }
Jet apply_exp(const Jet& w, const Context&) {
    const cplx e = std::exp(w.d0);
    return compose(w, e, e, e, e);
}

cplx apply_log(cplx w, const Context& ctx) { return branch_log(w, ctx); }
Jet apply_log(const Jet& w, const Context& ctx) {
    const cplx l = branch_log(w.d0, ctx);
    const cplx inv = 1.0 / w.d0;
    return compose(w, l, inv, -inv * inv, 2.0 * inv * inv * inv);
}

cplx apply_pow(const Node& node, cplx w, const Context& ctx) { return shifted_power(node, w, 0, ctx); }
Jet apply_pow(const Node& node, const Jet& w, const Context& ctx) {
    const cplx e = node.c;
    const cplx p0 = shifted_power(node, w.d0, 0, ctx);
    if (node.integer_exponent && node.n >= 0 && node.n < 3) {
        // avoid w^(n-k) with negative shift at w = 0
        const cplx p1 = node.n >= 1 ? e * ipow(w.d0, node.n - 1, ctx) : 0.0;
        const cplx p2 = node.n >= 2 ? e * (e - 1.0) * ipow(w.d0, node.n - 2, ctx) : 0.0;
        return compose(w, p0, p1, p2, 0.0);
    }
    const cplx p1 = e * shifted_power(node, w.d0, 1, ctx);
    const cplx p2 = e * (e - 1.0) * shifted_power(node, w.d0, 2, ctx);
    const cplx p3 = e * (e - 1.0) * (e - 2.0) * shifted_power(node, w.d0, 3, ctx);
    return compose(w, p0, p1, p2, p3);
}

template <class T>
T make_const(cplx c, cplx z);
template <>
cplx make_const<cplx>(cplx c, cplx) { return c; }
template <>
Jet make_const<Jet>(cplx c, cplx z) { return Jet::constant(c, z); }

template <class T>
T make_var(cplx z);
template <>
cplx make_var<cplx>(cplx z) { return z; }
template <>
Jet make_var<Jet>(cplx z) { return Jet::variable(z); }

template <class T>
T eval(const Node& node, const Context& ctx) {
    switch (node.op) {
        case Op::constant: return make_const<T>(node.c, ctx.z);
        case Op::var: return make_var<T>(ctx.z);
        case Op::add: return eval<T>(*node.a, ctx) + eval<T>(*node.b, ctx);
        case Op::sub: return eval<T>(*node.a, ctx) - eval<T>(*node.b, ctx);
        case Op::mul: return eval<T>(*node.a, ctx) * eval<T>(*node.b, ctx);
        case Op::div: return div_checked(eval<T>(*node.a, ctx), eval<T>(*node.b, ctx), ctx);
        case Op::neg: return -eval<T>(*node.a, ctx);
        case Op::exp: return apply_exp(eval<T>(*node.a, ctx), ctx);
        case Op::log: return apply_log(eval<T>(*node.a, ctx), ctx);
        case Op::pow: return apply_pow(node, eval<T>(*node.a, ctx), ctx);
    }
    return make_const<T>(0.0, ctx.z);
}

bool finite(cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

class Parser {
public:
    Parser(const std::string& src, double branch) : s_(src), branch_(branch) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

    bool cut_free = true;

private:
    const std::string& s_;
    std::size_t pos_ = 0;
    double branch_;

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError(fmt::format("expression \"{}\": {} at position {}", s_, what, pos_));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char ch) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char ch) {
        if (!accept(ch)) fail(fmt::format("expected '{}'", ch));
    }

    NodePtr fold(Node n) {
        const bool a_const = !n.a || n.a->op == Op::constant;
        const bool b_const = !n.b || n.b->op == Op::constant;
        if (n.op != Op::constant && n.op != Op::var && a_const && b_const) {
            const Context ctx{0.0, branch_};
            try {
                const cplx v = eval<cplx>(n, ctx);
                if (finite(v)) {
                    Node c;
                    c.c = v;
                    return std::make_shared<const Node>(c);
                }
            } catch (const EvaluationError&) {
            }
            fail("constant subexpression is undefined");
        }
        return std::make_shared<const Node>(std::move(n));
    }

    NodePtr binary(Op op, NodePtr a, NodePtr b) {
        Node n;
        n.op = op;
        n.a = std::move(a);
        n.b = std::move(b);
        return fold(std::move(n));
    }

    NodePtr unary(Op op, NodePtr a) {
        Node n;
        n.op = op;
        n.a = std::move(a);
        if (op == Op::log && n.a->op != Op::constant) cut_free = false;
        return fold(std::move(n));
    }

    NodePtr power(NodePtr base, NodePtr exponent) {
        if (exponent->op != Op::constant) fail("exponent must be a constant expression");
        Node n;
        n.op = Op::pow;
        n.a = std::move(base);
        n.c = exponent->c;
        const double re = n.c.real();
        if (n.c.imag() == 0.0 && std::abs(re) < 1e9 && re == std::round(re)) {
            n.integer_exponent = true;
            n.n = static_cast<long>(re);
        } else if (n.a->op != Op::constant) {
            cut_free = false;
        }
        return fold(std::move(n));
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = binary(Op::add, lhs, term());
            } else if (accept('-')) {
                lhs = binary(Op::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = signed_factor();
        for (;;) {
            if (accept('*')) {
                lhs = binary(Op::mul, lhs, signed_factor());
            } else if (accept('/')) {
                lhs = binary(Op::div, lhs, signed_factor());
            } else {
                return lhs;
            }
        }
    }

    NodePtr signed_factor() {
        if (accept('-')) return unary(Op::neg, signed_factor());
        if (accept('+')) return signed_factor();
        NodePtr base = primary();
        if (accept('^')) return power(base, signed_factor());
        return base;
    }

    std::string identifier() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    NodePtr constant(cplx c) {
        Node n;
        n.c = c;
        return std::make_shared<const Node>(n);
    }

    NodePtr number() {
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double x = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        if (pos_ < s_.size() && s_[pos_] == 'i' &&
            (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
            ++pos_;
            return constant(cplx(0.0, x));
        }
        return constant(x);
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char ch = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
        if (accept('(')) {
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (!std::isalpha(static_cast<unsigned char>(ch))) fail(fmt::format("unexpected character '{}'", ch));
        const std::string id = identifier();
        if (id == "z") {
            Node n;
            n.op = Op::var;
            return std::make_shared<const Node>(n);
        }
        if (id == "i") return constant(cplx(0.0, 1.0));
        if (id == "pi") return constant(std::numbers::pi);
        if (id == "exp" || id == "log") {
            expect('(');
            NodePtr arg = expr();
            expect(')');
            return unary(id == "exp" ? Op::exp : Op::log, arg);
        }
        if (id == "pow") {
            expect('(');
            NodePtr base = expr();
            expect(',');
            NodePtr exponent = expr();
            expect(')');
            return power(base, exponent);
        }
        fail(fmt::format("unknown identifier '{}'", id));
    }
};

}  // namespace

Expression Expression::parse(const std::string& source, double branch_angle) {
    Parser p(source, branch_angle);
    Expression e;
    e.root_ = p.parse();
    e.source_ = source;
    e.branch_angle_ = branch_angle;
    e.cut_free_ = p.cut_free;
    return e;
}

bool Expression::is_constant() const noexcept { return root_ && root_->op == Op::constant; }

cplx Expression::value(cplx z) const {
    if (!root_) throw ConfigError("evaluating an empty expression");
    const Context ctx{z, branch_angle_};
    const cplx v = eval<cplx>(*root_, ctx);
    if (!finite(v)) pole(ctx, "non-finite value (pole or overflow)");
    return v;
}

Jet Expression::jet(cplx z) const {
    if (!root_) throw ConfigError("evaluating an empty expression");
    const Context ctx{z, branch_angle_};
    Jet j = eval<Jet>(*root_, ctx);
    if (!finite(j.d0) || !finite(j.d1) || !finite(j.d2) || !finite(j.d3)) {
        pole(ctx, "non-finite jet (pole or overflow)");
    }
    j.z = z;
    return j;
}

}  // namespace flatfront
