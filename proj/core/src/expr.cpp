#include "lane8/expr.hpp"

#include <cctype>

namespace lane8 {

namespace {

enum class Tok { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const std::size_t at = pos_;
        if (pos_ >= s_.size()) return {Tok::End, "", at};
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return number(at);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident(at);
        ++pos_;
        switch (c) {
            case '+': return {Tok::Plus, "+", at};
            case '-': return {Tok::Minus, "-", at};
            case '*':
                if (pos_ < s_.size() && s_[pos_] == '*')
                    throw ParseError("unknown operator '**'", at);
                return {Tok::Star, "*", at};
            case '/': return {Tok::Slash, "/", at};
            case '^': return {Tok::Caret, "^", at};
            case '(': return {Tok::LParen, "(", at};
            case ')': return {Tok::RParen, ")", at};
            case ',': return {Tok::Comma, ",", at};
            default: throw ParseError(std::string("unexpected character '") + c + "'", at);
        }
    }

private:
    Token number(std::size_t at) {
        std::size_t end = pos_;
        while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
        if (end < s_.size() && s_[end] == '.') {
            ++end;
            while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
        }
        if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
            std::size_t ex = end + 1;
            if (ex < s_.size() && (s_[ex] == '+' || s_[ex] == '-')) ++ex;
            if (ex < s_.size() && std::isdigit(static_cast<unsigned char>(s_[ex]))) {
                end = ex;
                while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
            }
        }
        Token t{Tok::Num, s_.substr(pos_, end - pos_), at};
        pos_ = end;
        return t;
    }

    Token ident(std::size_t at) {
        std::size_t end = pos_;
        while (end < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
            ++end;
        Token t{Tok::Ident, s_.substr(pos_, end - pos_), at};
        pos_ = end;
        return t;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) { advance(); }

    int parse(std::vector<Expr::Node>& nodes) {
        nodes_ = &nodes;
        const int root = expr(1);
        if (cur_.kind != Tok::End) throw ParseError("unexpected token '" + cur_.text + "'", cur_.offset);
        return root;
    }

private:
    void advance() { cur_ = lex_.next(); }

    int add(Expr::Op op, int a = -1, int b = -1, std::string lit = {}) {
        nodes_->push_back({op, std::move(lit), a, b});
        return static_cast<int>(nodes_->size()) - 1;
    }

    static int binary_prec(Tok t) {
        switch (t) {
            case Tok::Plus:
            case Tok::Minus: return 1;
            case Tok::Star:
            case Tok::Slash: return 2;
            default: return 0;
        }
    }

    // precedence climb over + - * /; unary minus and ^ handled below
    int expr(int min_prec) {
        int lhs = unary();
        while (true) {
            const int prec = binary_prec(cur_.kind);
            if (prec == 0 || prec < min_prec) return lhs;
            const Tok op = cur_.kind;
            advance();
            const int rhs = expr(prec + 1);
            switch (op) {
                case Tok::Plus: lhs = add(Expr::Op::Add, lhs, rhs); break;
                case Tok::Minus: lhs = add(Expr::Op::Sub, lhs, rhs); break;
                case Tok::Star: lhs = add(Expr::Op::Mul, lhs, rhs); break;
                default: lhs = add(Expr::Op::Div, lhs, rhs); break;
            }
        }
    }

    int unary() {
        if (cur_.kind == Tok::Minus) {
            advance();
            return add(Expr::Op::Neg, unary());
        }
        return power();
    }

    // right-associative, binds tighter than unary minus on the left
    int power() {
        const int base = primary();
        if (cur_.kind == Tok::Caret) {
            advance();
            return add(Expr::Op::Pow, base, unary());
        }
        return base;
    }

    int primary() {
        if (cur_.kind == Tok::Num) {
            const int id = add(Expr::Op::Number, -1, -1, cur_.text);
            advance();
            return id;
        }
        if (cur_.kind == Tok::LParen) {
            advance();
            const int inner = expr(1);
            expect(Tok::RParen, "expected ')'");
            return inner;
        }
        if (cur_.kind == Tok::Ident) return identifier();
        throw ParseError("expected operand, found " +
                             (cur_.kind == Tok::End ? "end of input" : "'" + cur_.text + "'"),
                         cur_.offset);
    }

    int identifier() {
        const Token name = cur_;
        advance();
        if (name.text == "x") return add(Expr::Op::VarX);
        if (name.text == "u") return add(Expr::Op::VarU);
        if (name.text == "pi") return add(Expr::Op::Pi);
        if (name.text == "e") return add(Expr::Op::E);

        Expr::Op op;
        int arity = 1;
        if (name.text == "exp") op = Expr::Op::Exp;
        else if (name.text == "ln" || name.text == "log") op = Expr::Op::Ln;
        else if (name.text == "sqrt") op = Expr::Op::Sqrt;
        else if (name.text == "sin") op = Expr::Op::Sin;
        else if (name.text == "cos") op = Expr::Op::Cos;
        else if (name.text == "abs") op = Expr::Op::Abs;
        else if (name.text == "pow") { op = Expr::Op::Pow; arity = 2; }
        else throw ParseError("unknown identifier '" + name.text + "'", name.offset);

        expect(Tok::LParen, "expected '(' after '" + name.text + "'");
        const int a = expr(1);
        if (arity == 2) {
            expect(Tok::Comma, "'" + name.text + "' takes 2 arguments");
            const int b = expr(1);
            expect(Tok::RParen, "expected ')'");
            return add(op, a, b);
        }
        if (cur_.kind == Tok::Comma)
            throw ParseError("'" + name.text + "' takes 1 argument", cur_.offset);
        expect(Tok::RParen, "expected ')'");
        return add(op, a);
    }

    void expect(Tok kind, const std::string& msg) {
        if (cur_.kind != kind) throw ParseError(msg, cur_.offset);
        advance();
    }

    Lexer lex_;
    Token cur_{Tok::End, "", 0};
    std::vector<Expr::Node>* nodes_ = nullptr;
};

}  // namespace

Expr parse_rhs(const std::string& text) {
    if (text.empty()) throw ParseError("empty expression", 0);
    Expr e;
    Parser p(text);
    e.root_ = p.parse(e.nodes_);
    return e;
}

namespace detail {

std::string print_node(const Expr& e, int idx) {
    using Op = Expr::Op;
    const Expr::Node& n = e.node(idx);
    switch (n.op) {
        case Op::Number: return n.literal;
        case Op::VarX: return "x";
        case Op::VarU: return "u";
        case Op::Pi: return "pi";
        case Op::E: return "e";
        case Op::Neg: return "(-" + print_node(e, n.a) + ")";
        case Op::Add: return "(" + print_node(e, n.a) + " + " + print_node(e, n.b) + ")";
        case Op::Sub: return "(" + print_node(e, n.a) + " - " + print_node(e, n.b) + ")";
        case Op::Mul: return "(" + print_node(e, n.a) + " * " + print_node(e, n.b) + ")";
        case Op::Div: return "(" + print_node(e, n.a) + " / " + print_node(e, n.b) + ")";
        case Op::Pow: return "(" + print_node(e, n.a) + " ^ " + print_node(e, n.b) + ")";
        case Op::Exp: return "exp(" + print_node(e, n.a) + ")";
        case Op::Ln: return "ln(" + print_node(e, n.a) + ")";
        case Op::Sqrt: return "sqrt(" + print_node(e, n.a) + ")";
        case Op::Sin: return "sin(" + print_node(e, n.a) + ")";
        case Op::Cos: return "cos(" + print_node(e, n.a) + ")";
        case Op::Abs: return "abs(" + print_node(e, n.a) + ")";
    }
    return "?";
}

}  // namespace detail

std::string to_string(const Expr& e) { return detail::print_node(e, e.root()); }

}  // namespace lane8
