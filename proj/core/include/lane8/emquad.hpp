#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "lane8/fdweights.hpp"
#include "lane8/grid.hpp"

namespace lane8 {

/// First, third and fifth derivatives of the integrand at the interval ends,
/// as consumed by the corrected trapezoid rule.
template <class R>
struct EndpointDerivs {
    R d1_a{}, d3_a{}, d5_a{};
    R d1_b{}, d3_b{}, d5_b{};
};

/// Trapezoid sum plus Bernoulli-coefficient endpoint corrections:
///   T(h) - h^2/12 [d1] + h^4/720 [d3] - h^6/30240 [d5],
/// eighth-order accurate for smooth integrands and exact for polynomials of
/// degree <= 7 when the derivatives are exact.
template <class R>
R em_trapezoid(std::span<const R> vals, R h, const EndpointDerivs<R>& d) {
    if (vals.size() < 2) throw std::invalid_argument("em_trapezoid: need at least 2 nodes");
    R t = (vals.front() + vals.back()) / R(2);
    for (std::size_t j = 1; j + 1 < vals.size(); ++j) t += vals[j];
    t *= h;
    const R h2 = h * h, h4 = h2 * h2, h6 = h4 * h2;
    return t - h2 / R(12) * (d.d1_b - d.d1_a) + h4 / R(720) * (d.d3_b - d.d3_a) -
           h6 / R(30240) * (d.d5_b - d.d5_a);
}

enum class BetaCase { One, Integer };

/// Precomputed eighth-order quadrature operators for one grid and one beta
/// case. The correction terms differentiate the grid function with cached
/// 9-point windows (orders 8,7,6,5,4 for derivatives 1..5); immutable after
/// construction, all operators are pure.
template <class R>
class QuadPlan {
public:
    static QuadPlan beta_one(const UniformGrid<R>& g) { return QuadPlan(g, BetaCase::One, 1); }

    static QuadPlan beta_integer(const UniformGrid<R>& g, int n) {
        if (n < 2) throw std::invalid_argument("QuadPlan: integer beta case needs n >= 2");
        return QuadPlan(g, BetaCase::Integer, n);
    }

    BetaCase beta_case() const { return case_; }
    int exponent() const { return n_; }
    const UniformGrid<R>& grid() const { return grid_; }

    /// d_i^p: p-th derivative of t^n at x_i (integer case table).
    R monomial_deriv(int i, int p) const {
        require(BetaCase::Integer, "monomial_deriv");
        if (p > n_) return R(0);
        R c(1);
        for (int q = 0; q < p; ++q) c *= R(n_ - q);
        return c * int_pow(x_[static_cast<std::size_t>(i)], n_ - p);
    }

    // --- beta = 1 operators ---

    /// int_0^{x_i} t phi dt; exactly 0 at i = 0.
    R i1(const GridFunction<R>& phi, int i) const { return i1_all(phi)[static_cast<std::size_t>(i)]; }

    /// F_0 = 0 and F_i = I1(x_i)/x_i.
    GridFunction<R> f_values(const GridFunction<R>& phi) const {
        require(BetaCase::One, "f_values");
        check(phi);
        std::vector<R> f = i1_all(phi);
        for (int i = 1; i <= grid_.intervals(); ++i)
            f[static_cast<std::size_t>(i)] /= x_[static_cast<std::size_t>(i)];
        return GridFunction<R>(grid_, std::move(f));
    }

    /// int_{x_i}^1 t ln(t) phi dt; exactly 0 at i = N.
    R i2(const GridFunction<R>& phi, int i) const { return i2_all(phi)[static_cast<std::size_t>(i)]; }

    /// int_{x_i}^1 F dt, the corrected trapezoid on the computed F values.
    R f_integral(const GridFunction<R>& f_vals, int i) const {
        return f_integral_all(f_vals)[static_cast<std::size_t>(i)];
    }

    // --- beta = n operators ---

    /// int_0^{x_i} t^n phi dt; exactly 0 at i = 0.
    R a1(const GridFunction<R>& phi, int i) const { return a1_all(phi)[static_cast<std::size_t>(i)]; }

    /// int_{x_i}^1 t^n phi dt; exactly 0 at i = N.
    R a2(const GridFunction<R>& phi, int i) const { return a2_all(phi)[static_cast<std::size_t>(i)]; }

    /// int_{x_i}^1 t phi dt; exactly 0 at i = N.
    R a3(const GridFunction<R>& phi, int i) const { return a3_all(phi)[static_cast<std::size_t>(i)]; }

    /// int_0^1 t^beta phi dt (the I1 / A1 operator at the right endpoint).
    R full_interval(const GridFunction<R>& phi) const {
        check(phi);
        std::vector<R> v = (case_ == BetaCase::One) ? i1_all(phi) : a1_all(phi);
        return v.back();
    }

    // Batch forms used by the solver steps; element i equals the
    // single-index operator at i.

    std::vector<R> i1_all(const GridFunction<R>& phi) const {
        require(BetaCase::One, "i1");
        check(phi);
        const int N = grid_.intervals();
        const R h = grid_.step();
        const Derivs d(*this, phi);
        std::vector<R> out(static_cast<std::size_t>(N) + 1, R(0));
        R run(0);  // sum_{j=1}^{i-1} x_j phi_j
        for (int i = 1; i <= N; ++i) {
            if (i >= 2) run += x_[static_cast<std::size_t>(i - 1)] * phi[i - 1];
            const R xi = x_[static_cast<std::size_t>(i)];
            const R t = h / R(2) * (xi * phi[i] + R(2) * run);
            const R c2 = phi[i] + xi * d(1, i) - phi[0];
            const R c4 = R(3) * d(2, i) + xi * d(3, i) - R(3) * d(2, 0);
            const R c6 = R(5) * d(4, i) + xi * d(5, i) - R(5) * d(4, 0);
            out[static_cast<std::size_t>(i)] = corrected(t, h, c2, c4, c6);
        }
        return out;
    }

    std::vector<R> i2_all(const GridFunction<R>& phi) const {
        require(BetaCase::One, "i2");
        const GridFunction<R> f = f_values(phi);
        const std::vector<R> lf = f_integral_all(f);
        const int N = grid_.intervals();
        std::vector<R> out(static_cast<std::size_t>(N) + 1, R(0));
        out[0] = -lf[0];
        for (int i = 1; i < N; ++i) {
            const R xi = x_[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(i)] = -xi * log(xi) * f[i] - lf[static_cast<std::size_t>(i)];
        }
        return out;
    }

    std::vector<R> f_integral_all(const GridFunction<R>& f_vals) const {
        require(BetaCase::One, "f_integral");
        check(f_vals);
        const int N = grid_.intervals();
        const R h = grid_.step();
        const Derivs d(*this, f_vals);
        std::vector<R> out(static_cast<std::size_t>(N) + 1, R(0));
        R run(0);  // sum_{j=i+1}^{N-1} F_j
        for (int i = N - 1; i >= 0; --i) {
            if (i + 1 <= N - 1) run += f_vals[i + 1];
            const R t = h / R(2) * (f_vals[N] + f_vals[i] + R(2) * run);
            const R c2 = d(1, N) - d(1, i);
            const R c4 = d(3, N) - d(3, i);
            const R c6 = d(5, N) - d(5, i);
            out[static_cast<std::size_t>(i)] = corrected(t, h, c2, c4, c6);
        }
        return out;
    }

    std::vector<R> a1_all(const GridFunction<R>& phi) const {
        require(BetaCase::Integer, "a1");
        check(phi);
        const int N = grid_.intervals();
        const R h = grid_.step();
        const Derivs d(*this, phi);
        std::vector<R> out(static_cast<std::size_t>(N) + 1, R(0));
        R run(0);  // sum_{j=1}^{i-1} x_j^n phi_j
        for (int i = 1; i <= N; ++i) {
            if (i >= 2) run += xn(i - 1) * phi[i - 1];
            const R t = h / R(2) * (xn(i) * phi[i] + xn(0) * phi[0] + R(2) * run);
            const R c2 = monomial_deriv(i, 0) * d(1, i) + monomial_deriv(i, 1) * phi[i] -
                         monomial_deriv(0, 0) * d(1, 0) - monomial_deriv(0, 1) * phi[0];
            const R c4 = leibniz<3>(d, i, 0);
            const R c6 = leibniz<5>(d, i, 0);
            out[static_cast<std::size_t>(i)] = corrected(t, h, c2, c4, c6);
        }
        return out;
    }

    std::vector<R> a2_all(const GridFunction<R>& phi) const {
        require(BetaCase::Integer, "a2");
        check(phi);
        const int N = grid_.intervals();
        const R h = grid_.step();
        const Derivs d(*this, phi);
        std::vector<R> out(static_cast<std::size_t>(N) + 1, R(0));
        R run(0);
        for (int i = N - 1; i >= 0; --i) {
            if (i + 1 <= N - 1) run += xn(i + 1) * phi[i + 1];
            const R t = h / R(2) * (xn(N) * phi[N] + xn(i) * phi[i] + R(2) * run);
            const R c2 = monomial_deriv(N, 0) * d(1, N) + monomial_deriv(N, 1) * phi[N] -
                         monomial_deriv(i, 0) * d(1, i) - monomial_deriv(i, 1) * phi[i];
            const R c4 = leibniz<3>(d, N, i);
            const R c6 = leibniz<5>(d, N, i);
            out[static_cast<std::size_t>(i)] = corrected(t, h, c2, c4, c6);
        }
        return out;
    }

    std::vector<R> a3_all(const GridFunction<R>& phi) const {
        require(BetaCase::Integer, "a3");
        check(phi);
        const int N = grid_.intervals();
        const R h = grid_.step();
        const Derivs d(*this, phi);
        std::vector<R> out(static_cast<std::size_t>(N) + 1, R(0));
        R run(0);
        for (int i = N - 1; i >= 0; --i) {
            if (i + 1 <= N - 1) run += x_[static_cast<std::size_t>(i + 1)] * phi[i + 1];
            const R xi = x_[static_cast<std::size_t>(i)];
            const R xN = x_[static_cast<std::size_t>(N)];
            const R t = h / R(2) * (xi * phi[i] + xN * phi[N] + R(2) * run);
            const R c2 = xN * d(1, N) + phi[N] - xi * d(1, i) - phi[i];
            const R c4 = R(3) * d(2, N) + xN * d(3, N) - R(3) * d(2, i) - xi * d(3, i);
            const R c6 = xN * d(5, N) + R(5) * d(4, N) - xi * d(5, i) - R(5) * d(4, i);
            out[static_cast<std::size_t>(i)] = corrected(t, h, c2, c4, c6);
        }
        return out;
    }

private:
    // Window width for the correction derivatives: nine points give
    // derivative orders 8,7,6,5,4 for n = 1..5, keeping every correction
    // term at least eighth-order. Fits any grid since N >= 8.
    static constexpr int kCorrectionWidth = 9;

    QuadPlan(const UniformGrid<R>& g, BetaCase c, int n) : grid_(g), case_(c), n_(n) {
        const int N = grid_.intervals();
        x_.reserve(static_cast<std::size_t>(N) + 1);
        for (int i = 0; i <= N; ++i) x_.push_back(grid_.node(i));
        for (int p = 1; p <= 5; ++p) {
            auto& row = stencils_[static_cast<std::size_t>(p - 1)];
            row.reserve(static_cast<std::size_t>(N) + 1);
            for (int i = 0; i <= N; ++i)
                row.push_back(make_stencil<R>(p, kCorrectionWidth - p, i, N));
        }
    }

    void require(BetaCase c, const char* op) const {
        if (case_ != c)
            throw std::invalid_argument(std::string(op) + ": operator not defined for this beta case");
    }

    void check(const GridFunction<R>& g) const {
        if (!(g.grid() == grid_)) throw std::invalid_argument("QuadPlan: grid mismatch");
    }

    static R int_pow(R x, int k) {
        R r(1);
        for (int q = 0; q < k; ++q) r *= x;
        return r;
    }

    R xn(int i) const { return int_pow(x_[static_cast<std::size_t>(i)], n_); }

    static R corrected(R t, R h, R c2, R c4, R c6) {
        const R h2 = h * h, h4 = h2 * h2, h6 = h4 * h2;
        return t - h2 / R(12) * c2 + h4 / R(720) * c4 - h6 / R(30240) * c6;
    }

    // Cached stencil derivatives of one grid function; d(p, i) is the p-th
    // derivative at x_i, with p = 0 meaning the value itself.
    struct Derivs {
        Derivs(const QuadPlan& plan, const GridFunction<R>& g) : plan_(plan), g_(g) {
            const std::size_t nn = static_cast<std::size_t>(g.intervals()) + 1;
            for (auto& row : vals_) row.assign(nn, R(0));
            for (int p = 1; p <= 5; ++p)
                for (int i = 0; i < static_cast<int>(nn); ++i)
                    vals_[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(i)] =
                        apply(plan_.stencils_[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(i)], g_, i);
        }
        R operator()(int p, int i) const {
            if (p == 0) return g_[i];
            return vals_[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(i)];
        }
        const QuadPlan& plan_;
        const GridFunction<R>& g_;
        std::array<std::vector<R>, 5> vals_;
    };

    // sum_m C(P,m) [d_hi^m D^{(P-m)} phi_hi - d_lo^m D^{(P-m)} phi_lo]
    template <int P>
    R leibniz(const Derivs& d, int hi, int lo) const {
        static constexpr int kBinom3[4] = {1, 3, 3, 1};
        static constexpr int kBinom5[6] = {1, 5, 10, 10, 5, 1};
        R acc(0);
        for (int m = 0; m <= P; ++m) {
            const int b = (P == 3) ? kBinom3[m] : kBinom5[m];
            acc += R(b) * (monomial_deriv(hi, m) * d(P - m, hi) - monomial_deriv(lo, m) * d(P - m, lo));
        }
        return acc;
    }

    UniformGrid<R> grid_;
    BetaCase case_;
    int n_;
    std::vector<R> x_;
    std::array<std::vector<Stencil<R>>, 5> stencils_;
};

}  // namespace lane8
