#include <doctest.h>

#include "lane8/expr.hpp"

using namespace lane8;

TEST_CASE("parses the registry right-hand sides") {
    auto e1 = parse_rhs("exp(u)");
    CHECK(eval_expr<double>(e1, 0.0, 1.0) == doctest::Approx(std::exp(1.0)));

    auto e4 = parse_rhs("1/2 - 1/(8*u^2)");
    CHECK(eval_expr<double>(e4, 0.3, 1.0) == doctest::Approx(0.375));

    auto e7 = parse_rhs("-e^u");
    CHECK(eval_expr<double>(e7, 0.0, 0.0) == doctest::Approx(-1.0));
}

TEST_CASE("arithmetic and precedence") {
    CHECK(eval_expr<double>(parse_rhs("x^2 + u"), 0.5, 1.0) == doctest::Approx(1.25));
    CHECK(eval_expr<double>(parse_rhs("2 + 3 * 4"), 0, 0) == doctest::Approx(14));
    CHECK(eval_expr<double>(parse_rhs("(2 + 3) * 4"), 0, 0) == doctest::Approx(20));
    CHECK(eval_expr<double>(parse_rhs("2 ^ 3 ^ 2"), 0, 0) == doctest::Approx(512));  // right-assoc
    CHECK(eval_expr<double>(parse_rhs("-2^2"), 0, 0) == doctest::Approx(-4));  // ^ binds tighter
    CHECK(eval_expr<double>(parse_rhs("2^-1"), 0, 0) == doctest::Approx(0.5));
    CHECK(eval_expr<double>(parse_rhs("10 - 4 - 3"), 0, 0) == doctest::Approx(3));  // left-assoc
    CHECK(eval_expr<double>(parse_rhs("pow(2, 10)"), 0, 0) == doctest::Approx(1024));
    CHECK(eval_expr<double>(parse_rhs("pi"), 0, 0) == doctest::Approx(3.14159265358979));
    CHECK(eval_expr<double>(parse_rhs("abs(-3) + sqrt(9) + cos(0)"), 0, 0) == doctest::Approx(7));
    CHECK(eval_expr<double>(parse_rhs("log(e)"), 0, 0) == doctest::Approx(1.0));
}

TEST_CASE("syntax errors carry the character offset") {
    const auto offset_of = [](const std::string& text) -> std::size_t {
        try {
            parse_rhs(text);
        } catch (const ParseError& e) {
            return e.offset;
        }
        return static_cast<std::size_t>(-1);
    };
    CHECK(offset_of("2**u") == 1);          // unknown operator
    CHECK(offset_of("foo(3)") == 0);        // unknown identifier
    CHECK(offset_of("1 + y") == 4);
    CHECK(offset_of("(1 + 2") == 6);        // unbalanced parenthesis
    CHECK(offset_of("pow(1)") == 5);        // arity
    CHECK(offset_of("sin(1, 2)") == 5);     // arity
    CHECK(offset_of("1 + ") == 4);          // missing operand
    CHECK(offset_of("3 $ 4") == 2);         // stray character
    CHECK_THROWS_AS(parse_rhs(""), ParseError);
}

TEST_CASE("evaluation domain errors carry the subexpression and value") {
    auto ln = parse_rhs("ln(x)");
    CHECK_THROWS_WITH_AS(eval_expr<double>(ln, 0.0, 0.0), doctest::Contains("ln of non-positive"),
                         EvalError);
    auto div = parse_rhs("1/(x - 1)");
    CHECK_THROWS_WITH_AS(eval_expr<double>(div, 1.0, 0.0),
                         doctest::Contains("division by zero"), EvalError);
    auto sq = parse_rhs("sqrt(x - 2)");
    CHECK_THROWS_AS(eval_expr<double>(sq, 0.0, 0.0), EvalError);
    auto pw = parse_rhs("(-2)^x");
    CHECK_THROWS_AS(eval_expr<double>(pw, 0.5, 0.0), EvalError);
}

TEST_CASE("printing round-trips structurally") {
    for (const char* text : {"exp(u)", "1/2 - 1/(8*u^2)", "-e^u", "x^2 + u*u - sin(x)/3",
                             "pow(x, 2.5) + abs(u)", "2.5e-3 * x"}) {
        const std::string once = to_string(parse_rhs(text));
        const std::string twice = to_string(parse_rhs(once));
        CHECK(once == twice);
    }
}

TEST_CASE("extended evaluation agrees with double to 14 digits") {
    for (const char* text :
         {"exp(u)", "-exp(u)/2", "1/2 - 1/(8*u^2)", "u/(1 + 0.1*u)", "-exp(-u)", "-u^5"}) {
        auto e = parse_rhs(text);
        for (double x : {0.1, 0.5, 0.9}) {
            for (double u : {0.25, 1.0, 1.4}) {
                const double vd = eval_expr<double>(e, x, u);
                const double vq = static_cast<double>(eval_expr<Real128>(e, Real128(x), Real128(u)));
                CHECK(std::fabs(vd - vq) <= 1e-14 * std::max(1.0, std::fabs(vd)));
            }
        }
    }
}

TEST_CASE("number literals keep full precision in extended mode") {
    // 0.1 is not binary-representable; the literal must be re-parsed at
    // extended precision rather than routed through a double
    auto e = parse_rhs("0.1");
    const Real128 v = eval_expr<Real128>(e, Real128(0), Real128(0));
    const Real128 tenth = Real128(1) / Real128(10);
    CHECK(lane8::abs(v - tenth) < Real128(1e-35));
}
