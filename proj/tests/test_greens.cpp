#include <doctest.h>

#include "lane8/greens.hpp"
#include "test_util.hpp"

using namespace lane8;

namespace {

template <class R>
GridFunction<R> constant(const UniformGrid<R>& g, R c) {
    return GridFunction<R>(g, std::vector<R>(static_cast<std::size_t>(g.node_count()), c));
}

// int_0^1 |t^beta G0(x,t)| dt via panel quadrature split at the kink
double kernel_mass(double beta, double x) {
    Kernel<double> k{beta};
    const auto f = [&](double t) { return std::fabs(std::pow(t, beta) * g0(k, x, t)); };
    double v = detail::integrate(f, 0.0, x, 64, 12);
    v += detail::integrate(f, x, 1.0, 64, 12);
    return v;
}

}  // namespace

TEST_CASE("kernel point values") {
    Kernel<double> k1{1.0};
    CHECK(g0(k1, 0.5, 1.0) == 0.0);             // ln 1
    CHECK(g0(k1, 0.5, 0.25) == doctest::Approx(std::log(0.5)));  // t <= x branch

    Kernel<double> k2{2.0};
    CHECK(g0(k2, 0.25, 0.5) == doctest::Approx(-1.0));  // (0.5^-1 - 1)/(1-2)

    Kernel<double> kr{1.0, BoundaryKind::Robin, 2.0, 1.0};
    CHECK(g0(kr, 0.5, 1.0) == doctest::Approx(-0.5));  // Dirichlet value minus sigma/mu

    CHECK_THROWS_AS(g0(k1, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(g0(k1, 0.5, 1.5), std::domain_error);
}

TEST_CASE("kernel is continuous at t = x") {
    for (double beta : {1.0, 2.0, 3.0, 1.5}) {
        Kernel<double> k{beta};
        for (double x : {0.1, 0.37, 0.5, 0.93}) {
            const double lo = g0(k, x, x * (1 - 1e-12));
            const double hi = g0(k, x, x * (1 + 1e-12));
            CHECK(lo == doctest::Approx(hi).epsilon(1e-9));
        }
    }
}

TEST_CASE("bound constants") {
    auto [c0, c1] = bound_constants(1.0);
    CHECK(c0 == doctest::Approx(0.25));
    CHECK(c1 == doctest::Approx(0.5));
    CHECK(bound_constants(2.0).first == doctest::Approx(1.0 / 6));
    CHECK(bound_constants(2.0).second == doctest::Approx(1.0 / 3));
    CHECK(bound_constants(3.0).first == doctest::Approx(0.125));
    CHECK(bound_constants(3.0).second == doctest::Approx(0.25));
    CHECK_THROWS_AS(bound_constants(0.5), std::invalid_argument);
}

TEST_CASE("weighted kernel mass attains 1/(2(beta+1))") {
    for (double beta : {1.0, 2.0, 3.0}) {
        double sup = kernel_mass(beta, 1e-8);  // sup is approached as x -> 0
        for (int j = 1; j <= 100; ++j) sup = std::max(sup, kernel_mass(beta, j / 100.0));
        CHECK(std::fabs(sup - 1.0 / (2 * (beta + 1))) < 1e-6);
    }
}

TEST_CASE("oracle on a zero source returns alpha") {
    UniformGrid<Real128> g(8);
    auto zero = constant(g, Real128(0));
    auto u = oracle_solve_linear(Kernel<Real128>{Real128(2)}, zero, Real128(3.5), 1024);
    for (int i = 0; i <= 8; ++i) CHECK(u[i] == Real128(3.5));
}

TEST_CASE("oracle reproduces the constant-source closed forms") {
    // beta=1: u = (x^2-1)/4; beta=2: u(0) = -1/6
    UniformGrid<Real128> g(8);
    auto one = constant(g, Real128(1));
    auto u1 = oracle_solve_linear(Kernel<Real128>{Real128(1)}, one, Real128(0), 1024);
    for (int i = 0; i <= 8; ++i) {
        const Real128 x = g.node(i);
        CHECK(lane8::abs(u1[i] - (x * x - Real128(1)) / Real128(4)) < Real128(1e-20));
    }
    auto u2 = oracle_solve_linear(Kernel<Real128>{Real128(2)}, one, Real128(0), 1024);
    CHECK(lane8::abs(u2[0] + Real128(1) / Real128(6)) < Real128(1e-20));

    // fractional beta goes through the same representation
    auto u15 = oracle_solve_linear(Kernel<Real128>{Real128(1.5)}, one, Real128(0), 1024);
    const Real128 expect = -Real128(1) / (Real128(2) * Real128(2.5));  // (x^2-1)/(2(beta+1)) at 0
    CHECK(lane8::abs(u15[0] - expect) < Real128(1e-20));
}

TEST_CASE("oracle output satisfies the differential equation") {
    // residual by second-order central differences at interior coarse nodes
    const int N = 32;
    UniformGrid<double> g(N);
    const double beta = 2.0;
    auto phi = lane8::sample(g, [](double x) { return std::exp(x) + x; });
    auto u = oracle_solve_linear(Kernel<double>{beta}, phi, 0.7, 1024);
    CHECK(u[N] == doctest::Approx(0.7).epsilon(1e-14));  // Dirichlet value

    const double h = g.step();
    double worst = 0;
    for (int i = 1; i < N; ++i) {
        const double upp = (u[i + 1] - 2 * u[i] + u[i - 1]) / (h * h);
        const double up = (u[i + 1] - u[i - 1]) / (2 * h);
        const double res = upp + beta / g.node(i) * up - phi[i];
        worst = std::max(worst, std::fabs(res));
    }
    CHECK(worst < 50 * h * h);
}

TEST_CASE("oracle handles the Robin kernel") {
    // beta=2, u* = 1 + x^2 has source 6; mu=2, sigma=1, alpha = 2 u*(1) + u*'(1) = 6
    UniformGrid<Real128> g(8);
    auto six = constant(g, Real128(6));
    Kernel<Real128> k{Real128(2), BoundaryKind::Robin, Real128(2), Real128(1)};
    auto u = oracle_solve_linear(k, six, Real128(6), 1024);
    for (int i = 0; i <= 8; ++i) {
        const Real128 x = g.node(i);
        CHECK(lane8::abs(u[i] - (Real128(1) + x * x)) < Real128(1e-20));
    }
}

TEST_CASE("panel quadrature sanity") {
    const double v = detail::integrate([](double t) { return t * t * t; }, 0.0, 1.0, 2, 8);
    CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
    const double w =
        detail::integrate_graded_at_zero([](double t) { return t * std::log(t); }, 1.0, 16, 8);
    CHECK(w == doctest::Approx(-0.25).epsilon(1e-12));
}
