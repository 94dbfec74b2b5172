#pragma once

#include <functional>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lane8/expr.hpp"
#include "lane8/solver.hpp"

namespace lane8 {

/// One benchmark problem: the BVP instance, its exact solution where known,
/// and default contraction-precheck constants (M, L) where they are established.
template <class R>
struct ExampleDef {
    std::string id;
    std::string label;  // example/table tag the run reproduces
    std::string title;
    ProblemSpec<R> spec;
    std::function<R(R)> exact;  // empty when no closed form is known
    std::optional<R> big_m;
    std::optional<R> lipschitz;
};

/// Parses "1", an integer "n", or a ratio "r/s".
inline BetaSpec parse_beta(const std::string& s) {
    const auto to_int = [&s](const std::string& part) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(part, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("parse_beta: expected 1, an integer, or r/s; got '" + s + "'");
        }
        if (pos != part.size())
            throw std::invalid_argument("parse_beta: expected 1, an integer, or r/s; got '" + s + "'");
        return v;
    };
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        const int n = to_int(s);
        return n == 1 ? BetaSpec::one() : BetaSpec::integer(n);
    }
    const int r = to_int(s.substr(0, slash));
    const int sd = to_int(s.substr(slash + 1));
    if (r <= 0 || sd <= 0) throw std::invalid_argument("parse_beta: r and s must be positive");
    const int g = std::gcd(r, sd);
    if (sd / g == 1) return (r / g == 1) ? BetaSpec::one() : BetaSpec::integer(r / g);
    return BetaSpec::rational(r, sd);
}

/// The seven benchmark problems. Where a closed-form solution exists it
/// satisfies the boundary conditions exactly; ex6 is registered in the
/// shifted normalization with u(1) = 0.
template <class R>
const std::vector<ExampleDef<R>>& registry() {
    static const std::vector<ExampleDef<R>> defs = [] {
        std::vector<ExampleDef<R>> v;
        const R e1 = exp(R(1));

        {
            ExampleDef<R> d;
            d.id = "ex1";
            d.label = "example 1 / table 1";
            d.title = "exponential source, beta = 1";
            d.spec = {BetaSpec::one(), R(0), [](R, R u) { return exp(u); }, {}, InitialIterate::ZeroState};
            const R c = R(2) * sqrt(R(6)) - R(5);
            d.exact = [c](R x) { return R(2) * log((c + R(1)) / (c * x * x + R(1))); };
            d.big_m = R(4);
            d.lipschitz = e1;
            v.push_back(std::move(d));
        }
        {
            ExampleDef<R> d;
            d.id = "ex2a";
            d.label = "example 2 / table 2a";
            d.title = "exponential sink, beta = 1, mu = 1/2";
            d.spec = {BetaSpec::one(), R(0), [](R, R u) { return -exp(u) / R(2); }, {},
                      InitialIterate::ZeroState};
            d.big_m = R(4);
            d.lipschitz = e1 / R(2);
            v.push_back(std::move(d));
        }
        {
            ExampleDef<R> d;
            d.id = "ex2b";
            d.label = "example 2 / table 2b";
            d.title = "exponential sink, beta = 1, mu = 1";
            d.spec = {BetaSpec::one(), R(0), [](R, R u) { return -exp(u); }, {},
                      InitialIterate::ZeroState};
            const R c = R(3) - R(2) * sqrt(R(2));
            d.exact = [c](R x) { return R(2) * log((c + R(1)) / (c * x * x + R(1))); };
            d.big_m = R(4);
            d.lipschitz = e1;
            v.push_back(std::move(d));
        }
        {
            ExampleDef<R> d;
            d.id = "ex2c";
            d.label = "example 2 / table 2c";
            d.title = "exponential sink, beta = 2, mu = 1/2";
            d.spec = {BetaSpec::integer(2), R(0), [](R, R u) { return -exp(u) / R(2); }, {},
                      InitialIterate::ZeroState};
            v.push_back(std::move(d));
        }
        {
            ExampleDef<R> d;
            d.id = "ex2d";
            d.label = "example 2 / table 2c";
            d.title = "exponential sink, beta = 2, mu = 1";
            d.spec = {BetaSpec::integer(2), R(0), [](R, R u) { return -exp(u); }, {},
                      InitialIterate::ZeroState};
            v.push_back(std::move(d));
        }
        {
            ExampleDef<R> d;
            d.id = "ex3";
            d.label = "example 3 / table 3";
            d.title = "isothermal gas sphere equilibrium";
            d.spec = {BetaSpec::integer(2), sqrt(R(3)) / R(2),
                      [](R, R u) { return -u * u * u * u * u; }, {}, InitialIterate::ZeroState};
            d.exact = [](R x) { return sqrt(R(3) / (R(3) + x * x)); };
            v.push_back(std::move(d));
        }
        {
            ExampleDef<R> d;
            d.id = "ex4";
            d.label = "example 4 / table 5";
            d.title = "shallow membrane cap radial stress";
            // f is undefined at u = 0, so the iteration seeds from the
            // alpha-frozen source instead of u = 0
            d.spec = {BetaSpec::integer(3), R(1),
                      [](R, R u) { return R(1) / R(2) - R(1) / (R(8) * u * u); }, {},
                      InitialIterate::AlphaBootstrap};
            v.push_back(std::move(d));
        }
        {
            ExampleDef<R> d;
            d.id = "ex5";
            d.label = "example 5 / table 7";
            d.title = "electroactive polymer film";
            d.spec = {BetaSpec::integer(2), R(1),
                      [](R, R u) { return u / (R(1) + u / R(10)); }, {},
                      InitialIterate::ZeroState};
            v.push_back(std::move(d));
        }
        {
            ExampleDef<R> d;
            d.id = "ex6";
            d.label = "example 6 / table 8";
            d.title = "rational beta = 3/2, exponential source";
            const R s2 = sqrt(R(2));
            d.spec = {BetaSpec::rational(3, 2), R(0),
                      [s2](R x, R u) {
                          const R w = x * x + R(1);
                          const R rw = sqrt(w);
                          const R fpart = R(1) / (w * rw) + R(3) / (R(2) * rw) - R(1);
                          return fpart + exp(s2 - rw) * exp(u);
                      },
                      {}, InitialIterate::ZeroState};
            d.exact = [s2](R x) { return sqrt(x * x + R(1)) - s2; };
            v.push_back(std::move(d));
        }
        {
            ExampleDef<R> d;
            d.id = "ex7";
            d.label = "example 7 / table 10";
            d.title = "thermal distribution in the human head, Robin condition";
            d.spec = {BetaSpec::integer(2), R(0), [](R, R u) { return -exp(-u); },
                      BoundaryCond<R>{BoundaryKind::Robin, R(2), R(1)}, InitialIterate::ZeroState};
            v.push_back(std::move(d));
        }
        return v;
    }();
    return defs;
}

template <class R>
const ExampleDef<R>& find_example(const std::string& id) {
    for (const ExampleDef<R>& d : registry<R>())
        if (d.id == id) return d;
    throw std::invalid_argument("unknown example id '" + id + "'");
}

/// Flat key-value problem definition:
///   beta      1 | n | r/s
///   alpha     <number>
///   rhs       <expression in x, u>
///   boundary  dirichlet | robin <mu> <sigma>
///   exact     <expression in x>          (optional)
/// '#' starts a comment; beta, alpha and rhs are required.
template <class R>
ExampleDef<R> parse_problem_file(std::istream& in, const std::string& id) {
    ExampleDef<R> def;
    def.id = id;
    def.title = "user problem";
    bool have_beta = false, have_alpha = false, have_rhs = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::string rest;
        std::getline(ls, rest);
        const auto b = rest.find_first_not_of(" \t");
        rest = (b == std::string::npos) ? std::string() : rest.substr(b);
        const auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
        if (rest.empty()) throw std::invalid_argument("problem file: key '" + key + "' has no value" + where());

        if (key == "beta") {
            def.spec.beta = parse_beta(rest);
            have_beta = true;
        } else if (key == "alpha") {
            def.spec.alpha = scalar_traits<R>::parse(rest);
            have_alpha = true;
        } else if (key == "rhs") {
            const Expr e = parse_rhs(rest);
            def.spec.f = [e](R x, R u) { return eval_expr<R>(e, x, u); };
            have_rhs = true;
        } else if (key == "boundary") {
            std::istringstream bs(rest);
            std::string kind;
            bs >> kind;
            if (kind == "dirichlet") {
                def.spec.boundary = {};
            } else if (kind == "robin") {
                std::string mu, sigma;
                if (!(bs >> mu >> sigma))
                    throw std::invalid_argument("problem file: robin needs mu and sigma" + where());
                def.spec.boundary = {BoundaryKind::Robin, scalar_traits<R>::parse(mu),
                                     scalar_traits<R>::parse(sigma)};
            } else {
                throw std::invalid_argument("problem file: unknown boundary '" + kind + "'" + where());
            }
        } else if (key == "exact") {
            const Expr e = parse_rhs(rest);
            def.exact = [e](R x) { return eval_expr<R>(e, x, R(0)); };
        } else {
            throw std::invalid_argument("problem file: unknown key '" + key + "'" + where());
        }
    }
    if (!have_beta || !have_alpha || !have_rhs)
        throw std::invalid_argument("problem file: beta, alpha and rhs are required");
    return def;
}

}  // namespace lane8
