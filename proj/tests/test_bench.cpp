#include <doctest.h>

#include <sstream>

#include "lane8/bench.hpp"
#include "lane8/report_io.hpp"
#include "test_util.hpp"

using namespace lane8;

namespace {

template <class R>
SolveConfig<R> cfg(int n) {
    SolveConfig<R> c;
    c.intervals = n;
    return c;
}

}  // namespace

TEST_CASE("error_exact on matching samples is zero and shift-invariant") {
    const auto& ex1 = find_example<double>("ex1");
    UniformGrid<double> g(8);
    auto exact_samples = lane8::sample(g, [&](double x) { return ex1.exact(x); });
    SolveReport<double> rep{{}, exact_samples, 0, {}, Termination::Converged};
    for (int i = 0; i <= 8; ++i) rep.nodes.push_back(g.node(i));
    CHECK(error_exact<double>(rep, ex1.exact) == 0.0);

    // adding the same function to both representations leaves the metric alone
    auto shifted = lane8::sample(g, [&](double x) { return ex1.exact(x) + std::sin(x); });
    SolveReport<double> rep2 = rep;
    rep2.u = shifted;
    const double e1 = error_exact<double>(rep, ex1.exact);
    const double e2 = error_exact<double>(
        rep2, [&](double x) { return ex1.exact(x) + std::sin(x); });
    CHECK(e1 == doctest::Approx(e2).epsilon(1e-12));
}

TEST_CASE("double-mesh error of a restriction is zero") {
    UniformGrid<double> fine(16);
    auto f = lane8::sample(fine, [](double x) { return std::exp(x); });
    auto c = lane8::restrict_to_coarse(f);
    CHECK(error_double_mesh(c, f) == 0.0);

    UniformGrid<double> wrong(24);
    auto w = lane8::sample(wrong, [](double x) { return x; });
    CHECK_THROWS_AS(error_double_mesh(c, w), std::invalid_argument);
}

TEST_CASE("convergence order arithmetic") {
    CHECK(*convergence_order(2.56e-9, 1e-11) == doctest::Approx(8.0).epsilon(1e-6));
    CHECK(*convergence_order(3.8713e-10, 9.1226e-13) == doctest::Approx(8.7292).epsilon(1e-4));
    CHECK(*convergence_order(1e-8, 1e-8) == doctest::Approx(0.0));
    CHECK_FALSE(convergence_order(1e-8, 0.0).has_value());
    CHECK_FALSE(convergence_order<double>(1e-8, 1e-15).has_value());  // below 100 eps
}

TEST_CASE("sweep accepts a registry id") {
    auto sweep = run_sweep<Real128>("ex5", 8, 1, cfg<Real128>(8));
    REQUIRE(sweep.runs.size() == 1);
    CHECK(sweep.runs[0].example == "ex5");
    CHECK_THROWS_AS(run_sweep<Real128>("nope", 8, 1, cfg<Real128>(8)), std::invalid_argument);
}

TEST_CASE("sweep on ex1 reproduces eighth-order decay") {
    const auto& ex1 = find_example<Real128>("ex1");
    auto sweep = run_sweep(ex1, 8, 3, cfg<Real128>(8));
    REQUIRE(sweep.runs.size() == 3);
    CHECK(sweep.all_converged());
    CHECK_FALSE(sweep.runs[0].order.has_value());
    for (std::size_t j = 1; j < 3; ++j) {
        REQUIRE(sweep.runs[j].order.has_value());
        CHECK(static_cast<double>(*sweep.runs[j].order) >= 7.0);
        CHECK(static_cast<double>(*sweep.runs[j].order) <= 11.5);
        CHECK(sweep.runs[j].intervals == 2 * sweep.runs[j - 1].intervals);
        CHECK(sweep.runs[j].error < sweep.runs[j - 1].error);
    }
    CHECK(sweep.runs[0].iterations == 27);
}

TEST_CASE("double-mesh sweep estimates track exact errors") {
    // where the exact solution exists, the double-mesh estimate stays within
    // a small factor of the true error once orders have stabilized
    for (const char* id : {"ex1", "ex3"}) {
        const auto& def = find_example<Real128>(id);
        SolveConfig<Real128> c = cfg<Real128>(8);
        auto r8 = solve(def.spec, c);
        c.intervals = 16;
        auto r16 = solve(def.spec, c);
        const Real128 dm = error_double_mesh(r8.u, r16.u);
        const Real128 ex = error_exact(r8, def.exact);
        CAPTURE(id);
        CHECK(dm >= Real128(0.3) * ex);
        CHECK(dm <= Real128(3) * ex);
    }
}

TEST_CASE("sweep orders for exact-solution examples stay in the observed band") {
    for (const char* id : {"ex2b", "ex3"}) {
        const auto& def = find_example<Real128>(id);
        auto sweep = run_sweep(def, 8, 2, cfg<Real128>(8));
        CAPTURE(id);
        REQUIRE(sweep.runs[1].order.has_value());
        CHECK(static_cast<double>(*sweep.runs[1].order) >= 7.0);
        CHECK(static_cast<double>(*sweep.runs[1].order) <= 11.5);
    }
}

TEST_CASE("table emission") {
    const auto& ex5 = find_example<Real128>("ex5");
    auto sweep = run_sweep(ex5, 8, 2, cfg<Real128>(8));

    const std::string csv = to_csv(sweep);
    CHECK(csv.rfind("example,N,k,E,order,flag,seconds\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.find("ex5,8,") != std::string::npos);
    CHECK(csv.find("ex5,16,") != std::string::npos);

    const std::string md = to_markdown(sweep);
    CHECK(md.find("| ex5 | 8 |") != std::string::npos);

    const std::string jl = to_jsonl(sweep);
    std::istringstream lines(jl);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j.at("example") == "ex5");
        CHECK(j.at("N") == (rows == 0 ? 8 : 16));
        CHECK(j.contains("k"));
        CHECK(j.contains("E"));
        CHECK(j.contains("seconds"));
        ++rows;
    }
    CHECK(rows == 2);
}

TEST_CASE("json report round-trips bit-exactly") {
    const auto& ex1 = find_example<Real128>("ex1");
    auto rep = solve(ex1.spec, cfg<Real128>(8));
    auto j = report_to_json(rep, ex1.spec, "ex1", 8);
    CHECK(j.at("example") == "ex1");
    CHECK(j.at("beta") == "1");
    CHECK(j.at("precision") == "ext");
    CHECK(j.at("iterations") == 27);
    CHECK(j.at("termination") == "converged");

    const std::string text = j.dump();
    auto parsed = nlohmann::json::parse(text);
    auto [nodes, values] = nodes_values_from_json<Real128>(parsed);
    REQUIRE(nodes.size() == rep.nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        CHECK(nodes[i] == rep.nodes[i]);
        CHECK(values[i] == rep.u[static_cast<int>(i)]);
    }

    // and the double path
    const auto& d1 = find_example<double>("ex1");
    auto repd = solve(d1.spec, cfg<double>(8));
    auto jd = report_to_json(repd, d1.spec, "ex1", 8);
    auto [nd, vd] = nodes_values_from_json<double>(nlohmann::json::parse(jd.dump()));
    for (std::size_t i = 0; i < nd.size(); ++i) CHECK(vd[i] == repd.u[static_cast<int>(i)]);
}

TEST_CASE("method-3 sweeps use the induced nodes for exact errors") {
    const auto& ex6 = find_example<Real128>("ex6");
    auto sweep = run_sweep(ex6, 8, 2, cfg<Real128>(8));
    REQUIRE(sweep.runs.size() == 2);
    REQUIRE(sweep.runs[1].order.has_value());
    CHECK(static_cast<double>(*sweep.runs[1].order) >= 9.0);
    CHECK(static_cast<double>(*sweep.runs[1].order) <= 12.0);
}
