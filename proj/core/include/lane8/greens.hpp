#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lane8/grid.hpp"

namespace lane8 {

enum class BoundaryKind { Dirichlet, Robin };

/// Closed-form kernel of the integral representation of the linear problem.
/// The Robin variant shifts the Dirichlet kernel by -sigma/mu.
template <class R>
struct Kernel {
    R beta;
    BoundaryKind boundary = BoundaryKind::Dirichlet;
    R mu = R(1);
    R sigma = R(0);
};

template <class R>
R g0(const Kernel<R>& k, R x, R t) {
    if (k.beta < R(1)) throw std::invalid_argument("g0: kernel needs beta >= 1");
    if (k.boundary == BoundaryKind::Robin && (!(k.mu > R(0)) || k.sigma < R(0)))
        throw std::invalid_argument("g0: Robin kernel needs mu > 0 and sigma >= 0");
    if (!(x > R(0)) || x > R(1) || !(t > R(0)) || t > R(1))
        throw std::domain_error("g0: x and t must lie in (0,1]");
    const R z = (x <= t) ? t : x;
    R base;
    if (k.beta == R(1)) {
        base = log(z);
    } else {
        base = (pow(z, R(1) - k.beta) - R(1)) / (R(1) - k.beta);
    }
    if (k.boundary == BoundaryKind::Robin) base -= k.sigma / k.mu;
    return base;
}

/// (1/(2(beta+1)), 1/(beta+1)): the sup over x of the weighted kernel
/// integrals int_0^1 |t^beta G_0| dt and int_0^1 |t^beta G_1| dt.
template <class R>
std::pair<R, R> bound_constants(R beta) {
    if (beta < R(1)) throw std::invalid_argument("bound_constants: beta must be >= 1");
    return {R(1) / (R(2) * (beta + R(1))), R(1) / (beta + R(1))};
}

namespace detail {

/// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on the Legendre
/// recurrence; computed in the working precision and cached per order.
template <class R>
const std::pair<std::vector<R>, std::vector<R>>& gauss_legendre(int order) {
    static thread_local std::vector<std::pair<int, std::pair<std::vector<R>, std::vector<R>>>> cache;
    for (const auto& e : cache)
        if (e.first == order) return e.second;

    std::vector<R> xs(static_cast<std::size_t>(order)), ws(static_cast<std::size_t>(order));
    const R pi = R(2) * std::acos(0.0);
    const R tol = scalar_traits<R>::epsilon() * R(64);
    for (int i = 0; i < order; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n(x) = 0
        R x = -cos(pi * (R(i) + R(0.75)) / (R(order) + R(0.5)));
        for (int it = 0; it < 100; ++it) {
            R p0(1), p1 = x;
            for (int j = 2; j <= order; ++j) {
                R p2 = ((R(2 * j - 1)) * x * p1 - R(j - 1) * p0) / R(j);
                p0 = p1;
                p1 = p2;
            }
            const R dp = R(order) * (x * p1 - p0) / (x * x - R(1));
            const R dx = p1 / dp;
            x -= dx;
            if (abs(dx) < tol) break;
        }
        R p0(1), p1 = x;
        for (int j = 2; j <= order; ++j) {
            R p2 = ((R(2 * j - 1)) * x * p1 - R(j - 1) * p0) / R(j);
            p0 = p1;
            p1 = p2;
        }
        const R dp = R(order) * (x * p1 - p0) / (x * x - R(1));
        xs[static_cast<std::size_t>(i)] = x;
        ws[static_cast<std::size_t>(i)] = R(2) / ((R(1) - x * x) * dp * dp);
    }
    cache.emplace_back(order, std::make_pair(std::move(xs), std::move(ws)));
    return cache.back().second;
}

template <class R, class F>
R gl_panel(F&& f, R a, R b, int order) {
    const auto& [xs, ws] = gauss_legendre<R>(order);
    const R mid = (a + b) / R(2), half = (b - a) / R(2);
    R acc(0);
    for (std::size_t j = 0; j < xs.size(); ++j) acc += ws[j] * f(mid + half * xs[j]);
    return acc * half;
}

/// Composite Gauss-Legendre over uniform cells.
template <class R, class F>
R integrate(F&& f, R a, R b, int cells, int order = 8) {
    R acc(0);
    for (int c = 0; c < cells; ++c) {
        const R ca = a + (b - a) * R(c) / R(cells);
        const R cb = a + (b - a) * R(c + 1) / R(cells);
        acc += gl_panel(f, ca, cb, order);
    }
    return acc;
}

/// Composite rule with geometric grading toward a = 0 for integrands whose
/// higher derivatives blow up there (t log t and friends).
template <class R, class F>
R integrate_graded_at_zero(F&& f, R b, int cells, int order = 8) {
    R acc(0);
    R hi = b;
    const int levels = 150;  // down to ~1e-45, below any representable tail
    for (int l = 0; l < levels; ++l) {
        const R lo = hi / R(2);
        acc += integrate(f, lo, hi, std::max(1, cells / 8), order);
        hi = lo;
    }
    return acc;
}

/// Polynomial interpolation of coarse samples on a sliding window of up to 12
/// nodes (barycentric form); used to extend a grid function to off-grid t.
template <class R>
class WindowInterpolant {
public:
    explicit WindowInterpolant(const GridFunction<R>& g) : g_(g) {
        n_ = g.intervals();
        width_ = std::min(n_ + 1, 12);
        weights_.resize(static_cast<std::size_t>(width_));
        // barycentric weights for equispaced offsets 0..w-1: (-1)^j C(w-1, j)
        for (int j = 0; j < width_; ++j) {
            R c(1);
            for (int q = 1; q <= j; ++q) c = c * R(width_ - q) / R(q);
            weights_[static_cast<std::size_t>(j)] = (j % 2 == 0) ? c : -c;
        }
    }

    R operator()(R t) const {
        const R h = g_.grid().step();
        // window start, clamped
        int j0 = static_cast<int>(static_cast<double>(t / h)) - width_ / 2 + 1;
        j0 = std::clamp(j0, 0, n_ - width_ + 1);
        R num(0), den(0);
        for (int j = 0; j < width_; ++j) {
            const R xj = g_.grid().node(j0 + j);
            const R diff = t - xj;
            if (abs(diff) == R(0)) return g_[j0 + j];
            const R w = weights_[static_cast<std::size_t>(j)] / diff;
            num += w * g_[j0 + j];
            den += w;
        }
        return num / den;
    }

private:
    const GridFunction<R>& g_;
    int n_;
    int width_;
    std::vector<R> weights_;
};

}  // namespace detail

/// Brute-force reference solve of the linear problem u'' + (beta/x)u' = phi
/// through the integral representation: high-resolution composite quadrature
/// of t^beta G0(x_i,t) phi~(t) with the interpolant phi~ of the coarse
/// samples, split at the kernel kink t = x_i. Test oracle only; never part of
/// the production solve path.
template <class R>
GridFunction<R> oracle_solve_linear(const Kernel<R>& k, const GridFunction<R>& phi, R alpha,
                                    int m_fine = 1024) {
    if (m_fine < 1024) throw std::invalid_argument("oracle_solve_linear: m_fine must be >= 1024");
    const detail::WindowInterpolant<R> pt(phi);
    const int N = phi.intervals();
    const R beta = k.beta;
    const bool robin = k.boundary == BoundaryKind::Robin;
    const R shift = robin ? k.sigma / k.mu : R(0);
    const R a0 = robin ? alpha / k.mu : alpha;

    const auto weighted = [&](R t) { return pow(t, beta) * pt(t); };
    const int cells = std::max(16, m_fine / 8);  // 8-point panels
    // fractional beta makes t^beta rough at t = 0; grade those panels
    const bool graded = beta != floor(beta);

    const auto integrate_from_zero = [&](auto&& f, R b, int c) {
        return graded ? detail::integrate_graded_at_zero(f, b, c)
                      : detail::integrate(f, R(0), b, c);
    };

    // int_0^1 t^beta phi~, for the Robin kernel's constant shift
    R total(0);
    if (robin) total = integrate_from_zero(weighted, R(1), cells);

    std::vector<R> u(static_cast<std::size_t>(N) + 1, R(0));
    for (int i = 0; i <= N; ++i) {
        const R xi = phi.grid().node(i);
        R val;
        if (i == 0) {
            // limit form at x = 0: G0(0,t) = ln t (beta = 1) or the bounded
            // (t^{1-beta}-1)/(1-beta) branch (beta > 1)
            if (beta == R(1)) {
                val = detail::integrate_graded_at_zero(
                    [&](R t) { return t * log(t) * pt(t); }, R(1), cells);
            } else {
                val = integrate_from_zero(
                    [&](R t) {
                        return pow(t, beta) * (pow(t, R(1) - beta) - R(1)) / (R(1) - beta) * pt(t);
                    },
                    R(1), cells);
            }
        } else {
            Kernel<R> dir{beta, BoundaryKind::Dirichlet, R(1), R(0)};
            const int left_cells = std::max(8, cells * i / N);
            const int right_cells = std::max(8, cells * (N - i) / N);
            val = integrate_from_zero([&](R t) { return weighted(t) * g0(dir, xi, t); }, xi,
                                      left_cells);
            if (i < N)
                val += detail::integrate([&](R t) { return weighted(t) * g0(dir, xi, t); }, xi,
                                         R(1), right_cells);
        }
        u[static_cast<std::size_t>(i)] = a0 + val - shift * total;
    }
    return GridFunction<R>(phi.grid(), std::move(u));
}

}  // namespace lane8
