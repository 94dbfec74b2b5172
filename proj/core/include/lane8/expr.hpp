#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lane8/scalar.hpp"

namespace lane8 {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset(offset) {}
    std::size_t offset;
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Arithmetic expression over the variables x and u: + - * / ^ with ^
/// right-associative and binding tightest, unary minus, the constants pi and
/// e, and exp, ln, log, sqrt, sin, cos, abs, pow(a,b). Immutable after
/// parsing; numeric literals keep their source text so evaluation can parse
/// them at the working precision.
class Expr {
public:
    enum class Op {
        Number, VarX, VarU, Pi, E,
        Neg, Add, Sub, Mul, Div, Pow,
        Exp, Ln, Sqrt, Sin, Cos, Abs,
    };

    struct Node {
        Op op;
        std::string literal;  // Number only
        int a = -1, b = -1;   // child indices
    };

    const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    int root() const { return root_; }

    friend Expr parse_rhs(const std::string& text);

private:
    std::vector<Node> nodes_;
    int root_ = -1;
};

/// Parses by precedence climbing; reports syntax errors with the 0-based
/// character offset.
Expr parse_rhs(const std::string& text);

/// Canonical fully parenthesized form; re-parsing it reproduces the tree.
std::string to_string(const Expr& e);

namespace detail {

std::string print_node(const Expr& e, int idx);

inline const char* kPiLiteral = "3.14159265358979323846264338327950288";
inline const char* kELiteral = "2.71828182845904523536028747135266250";

template <class R>
R eval_node(const Expr& e, int idx, R x, R u) {
    using Op = Expr::Op;
    const Expr::Node& n = e.node(idx);
    switch (n.op) {
        case Op::Number: return scalar_traits<R>::parse(n.literal);
        case Op::VarX: return x;
        case Op::VarU: return u;
        case Op::Pi: return scalar_traits<R>::parse(kPiLiteral);
        case Op::E: return scalar_traits<R>::parse(kELiteral);
        case Op::Neg: return -eval_node(e, n.a, x, u);
        case Op::Add: return eval_node(e, n.a, x, u) + eval_node(e, n.b, x, u);
        case Op::Sub: return eval_node(e, n.a, x, u) - eval_node(e, n.b, x, u);
        case Op::Mul: return eval_node(e, n.a, x, u) * eval_node(e, n.b, x, u);
        case Op::Div: {
            const R num = eval_node(e, n.a, x, u);
            const R den = eval_node(e, n.b, x, u);
            if (den == R(0))
                throw EvalError("division by zero in " + print_node(e, idx) +
                                " (numerator = " + scalar_traits<R>::str(num, 17) + ")");
            return num / den;
        }
        case Op::Pow: {
            const R base = eval_node(e, n.a, x, u);
            const R ex = eval_node(e, n.b, x, u);
            const R v = pow(base, ex);
            if (!isfinite(v))
                throw EvalError("pow out of domain in " + print_node(e, idx) +
                                " (base = " + scalar_traits<R>::str(base, 17) +
                                ", exponent = " + scalar_traits<R>::str(ex, 17) + ")");
            return v;
        }
        case Op::Exp: return exp(eval_node(e, n.a, x, u));
        case Op::Ln: {
            const R v = eval_node(e, n.a, x, u);
            if (!(v > R(0)))
                throw EvalError("ln of non-positive value in " + print_node(e, idx) +
                                " (argument = " + scalar_traits<R>::str(v, 17) + ")");
            return log(v);
        }
        case Op::Sqrt: {
            const R v = eval_node(e, n.a, x, u);
            if (v < R(0))
                throw EvalError("sqrt of negative value in " + print_node(e, idx) +
                                " (argument = " + scalar_traits<R>::str(v, 17) + ")");
            return sqrt(v);
        }
        case Op::Sin: return sin(eval_node(e, n.a, x, u));
        case Op::Cos: return cos(eval_node(e, n.a, x, u));
        case Op::Abs: return abs(eval_node(e, n.a, x, u));
    }
    throw EvalError("corrupt expression node");
}

}  // namespace detail

/// Recursive evaluation in the scalar mode of R; domain errors carry the
/// offending sub-expression and values.
template <class R>
R eval_expr(const Expr& e, R x, R u) {
    return detail::eval_node(e, e.root(), x, u);
}

}  // namespace lane8
