#pragma once

#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lane8/emquad.hpp"
#include "lane8/greens.hpp"
#include "lane8/grid.hpp"

namespace lane8 {

/// The singular coefficient beta, tagged by how the solver treats it:
/// beta = 1 (Method 1), integer beta = n > 1 (Method 2), or rational
/// beta = r/s handled through the substitution y = x^{1/s} (Method 3).
struct BetaSpec {
    enum class Kind { One, Integer, Rational };

    Kind kind = Kind::One;
    int n = 1;         // integer case
    int r = 0, s = 0;  // rational case, gcd-reduced, r > s

    static BetaSpec one() { return {}; }

    static BetaSpec integer(int n) {
        if (n < 2) throw std::invalid_argument("BetaSpec::integer: need n >= 2 (use one())");
        BetaSpec b;
        b.kind = Kind::Integer;
        b.n = n;
        return b;
    }

    static BetaSpec rational(int r, int s) {
        if (r <= 0 || s <= 0) throw std::invalid_argument("BetaSpec::rational: need r, s > 0");
        const int g = std::gcd(r, s);
        r /= g;
        s /= g;
        if (s == 1)
            throw std::invalid_argument("BetaSpec::rational: r/s reduces to an integer; use one() or integer()");
        if (r <= s) throw std::invalid_argument("BetaSpec::rational: need r > s");
        BetaSpec b;
        b.kind = Kind::Rational;
        b.r = r;
        b.s = s;
        return b;
    }

    template <class R>
    R value() const {
        switch (kind) {
            case Kind::One: return R(1);
            case Kind::Integer: return R(n);
            default: return R(r) / R(s);
        }
    }

    std::string str() const {
        switch (kind) {
            case Kind::One: return "1";
            case Kind::Integer: return std::to_string(n);
            default: return std::to_string(r) + "/" + std::to_string(s);
        }
    }
};

template <class R>
struct BoundaryCond {
    BoundaryKind kind = BoundaryKind::Dirichlet;
    R mu = R(1);
    R sigma = R(0);
};

/// How the source iterate Phi_0 is seeded. ZeroState is the standard
/// Phi_0(x_i) = f(x_i, 0); AlphaBootstrap first solves the linear problem
/// with the source frozen at u = alpha and seeds from that solution, for
/// right-hand sides that are undefined at u = 0.
enum class InitialIterate { ZeroState, AlphaBootstrap };

template <class R>
struct ProblemSpec {
    BetaSpec beta;
    R alpha = R(0);
    std::function<R(R, R)> f;  // f(x, u)
    BoundaryCond<R> boundary;
    InitialIterate init = InitialIterate::ZeroState;
};

/// Contraction data for the fixed-point map: q = L/(2(beta+1)) with the
/// caller-supplied bound M on |f| and Lipschitz constant L of f in u.
template <class R>
struct WellPosedness {
    R big_m;
    R lipschitz;
    R q;
    R u_bound;   // |alpha| + M/(2(beta+1))
    R du_bound;  // M/(beta+1)
    bool contractive;
};

template <class R>
WellPosedness<R> check_wellposedness(const ProblemSpec<R>& p, R big_m, R lipschitz) {
    if (!(big_m > R(0))) throw std::invalid_argument("check_wellposedness: M must be > 0");
    if (lipschitz < R(0)) throw std::invalid_argument("check_wellposedness: L must be >= 0");
    const R beta = p.beta.template value<R>();
    WellPosedness<R> w;
    w.big_m = big_m;
    w.lipschitz = lipschitz;
    w.q = lipschitz / (R(2) * (beta + R(1)));
    w.u_bound = abs(p.alpha) + big_m / (R(2) * (beta + R(1)));
    w.du_bound = big_m / (beta + R(1));
    w.contractive = w.q < R(1);
    return w;
}

template <class R>
struct SolveConfig {
    int intervals = 64;
    R tol = scalar_traits<R>::default_tol();
    int max_iter = 100;
};

enum class Termination { Converged, MaxIter, Diverged };

inline const char* name(Termination t) {
    switch (t) {
        case Termination::Converged: return "converged";
        case Termination::MaxIter: return "max_iter";
        default: return "diverged";
    }
}

/// Final iterate and the iteration trace. `nodes` are the x-locations of the
/// values: the uniform grid for Methods 1/2, the induced non-uniform points
/// (i/N)^s for Method 3.
template <class R>
struct SolveReport {
    std::vector<R> nodes;
    GridFunction<R> u;
    int iterations = 0;
    std::vector<R> residual_history;
    Termination termination = Termination::Converged;
};

/// One linear step of the beta=1 scheme:
///   U(x_i) = alpha + L8(I2,x_i)phi + ln(x_i) L8(I1,x_i)phi   (i >= 1)
///   U(x_0) = alpha + L8(I2,x_0)phi
/// U(x_N) = alpha exactly (both operators vanish there and ln 1 = 0).
template <class R>
GridFunction<R> method1_step(const QuadPlan<R>& plan, const GridFunction<R>& phi, R alpha) {
    const int N = plan.grid().intervals();
    const std::vector<R> i1 = plan.i1_all(phi);
    const std::vector<R> i2 = plan.i2_all(phi);
    std::vector<R> u(static_cast<std::size_t>(N) + 1);
    u[0] = alpha + i2[0];
    for (int i = 1; i < N; ++i) {
        const R xi = plan.grid().node(i);
        u[static_cast<std::size_t>(i)] =
            alpha + i2[static_cast<std::size_t>(i)] + log(xi) * i1[static_cast<std::size_t>(i)];
    }
    u[static_cast<std::size_t>(N)] = alpha;
    return GridFunction<R>(plan.grid(), std::move(u));
}

/// One linear step of the integer beta = n scheme:
///   U(x_i) = alpha + [(x_i^{1-n}-1) A1 - A2 + A3] / (1-n)   (i >= 1)
///   U(x_0) = alpha + [A3(0) - A2(0)] / (1-n)
template <class R>
GridFunction<R> method2_step(const QuadPlan<R>& plan, const GridFunction<R>& phi, R alpha) {
    const int N = plan.grid().intervals();
    const int n = plan.exponent();
    const std::vector<R> a1 = plan.a1_all(phi);
    const std::vector<R> a2 = plan.a2_all(phi);
    const std::vector<R> a3 = plan.a3_all(phi);
    const R inv = R(1) / R(1 - n);
    std::vector<R> u(static_cast<std::size_t>(N) + 1);
    u[0] = alpha + inv * (a3[0] - a2[0]);
    for (int i = 1; i < N; ++i) {
        const R xi = plan.grid().node(i);
        const R w = pow(xi, R(1 - n)) - R(1);
        u[static_cast<std::size_t>(i)] =
            alpha + inv * (w * a1[static_cast<std::size_t>(i)] - a2[static_cast<std::size_t>(i)] +
                           a3[static_cast<std::size_t>(i)]);
    }
    u[static_cast<std::size_t>(N)] = alpha;  // x_N^{1-n}-1 = 0 and A2 = A3 = 0 there
    return GridFunction<R>(plan.grid(), std::move(u));
}

/// Robin step: the kernel shift -sigma/mu adds a constant correction to the
/// Dirichlet step run with boundary constant alpha/mu:
///   U = step(phi, alpha/mu) - (sigma/mu) int_0^1 t^beta phi dt.
template <class R>
GridFunction<R> robin_step(const QuadPlan<R>& plan, const GridFunction<R>& phi, R mu, R sigma,
                           R alpha) {
    if (!(mu > R(0))) throw std::invalid_argument("robin_step: mu must be > 0");
    GridFunction<R> base = (plan.beta_case() == BetaCase::One)
                               ? method1_step(plan, phi, alpha / mu)
                               : method2_step(plan, phi, alpha / mu);
    if (sigma == R(0)) return base;
    const R shift = sigma / mu * plan.full_interval(phi);
    std::vector<R> u(base.values().begin(), base.values().end());
    for (R& v : u) v -= shift;
    return GridFunction<R>(plan.grid(), std::move(u));
}

namespace detail {

template <class R, class F>
GridFunction<R> eval_source(const UniformGrid<R>& grid, const F& f, const GridFunction<R>& u) {
    std::vector<R> out(static_cast<std::size_t>(grid.node_count()));
    for (int i = 0; i <= grid.intervals(); ++i) {
        const R v = f(grid.node(i), u[i]);
        if (!isfinite(v))
            throw std::domain_error(
                "solve: f(x,u) is not finite at x=" + scalar_traits<R>::str(grid.node(i), 17) +
                ", u=" + scalar_traits<R>::str(u[i], 17));
        out[static_cast<std::size_t>(i)] = v;
    }
    return GridFunction<R>(grid, std::move(out));
}

template <class R, class F, class Step>
SolveReport<R> iterate(const UniformGrid<R>& grid, const F& f, const Step& step,
                       InitialIterate init, R alpha, const SolveConfig<R>& cfg) {
    if (!(cfg.tol > R(0))) throw std::invalid_argument("solve: tol must be > 0");
    if (cfg.tol < R(10) * scalar_traits<R>::epsilon())
        throw std::invalid_argument("solve: tol below 10*eps of the precision mode");
    if (cfg.max_iter < 1) throw std::invalid_argument("solve: max_iter must be >= 1");

    GridFunction<R> phi = [&] {
        if (init == InitialIterate::AlphaBootstrap) {
            const GridFunction<R> frozen =
                sample(grid, [&](R x) { return f(x, alpha); });
            return eval_source(grid, f, step(frozen));
        }
        const GridFunction<R> zero =
            GridFunction<R>(grid, std::vector<R>(static_cast<std::size_t>(grid.node_count()), R(0)));
        return eval_source(grid, f, zero);
    }();

    SolveReport<R> rep{{},
                       GridFunction<R>(grid, std::vector<R>(static_cast<std::size_t>(grid.node_count()), R(0))),
                       0,
                       {},
                       Termination::Converged};
    rep.nodes.reserve(static_cast<std::size_t>(grid.node_count()));
    for (int i = 0; i <= grid.intervals(); ++i) rep.nodes.push_back(grid.node(i));

    R first_residual(0);
    for (int k = 1; k <= cfg.max_iter; ++k) {
        GridFunction<R> u = step(phi);
        GridFunction<R> phi_next = eval_source(grid, f, u);
        R r(0);
        for (int i = 0; i <= grid.intervals(); ++i) {
            const R d = abs(phi_next[i] - phi[i]);
            if (d > r) r = d;
        }
        rep.residual_history.push_back(r);
        rep.iterations = k;
        rep.u = std::move(u);
        phi = std::move(phi_next);
        if (k == 1) first_residual = r;
        if (r <= cfg.tol) {
            rep.termination = Termination::Converged;
            return rep;
        }
        if (k > 1 && r > R(1000000) * first_residual) {
            rep.termination = Termination::Diverged;
            return rep;
        }
    }
    rep.termination = Termination::MaxIter;
    return rep;
}

}  // namespace detail

/// Rational beta = r/s: substitute y = x^{1/s}, solve the transformed
/// problem v'' + ((r-s+1)/y) v' = s^2 y^{2s-2} f(y^s, v) with Method 2, and
/// report the solution on the induced non-uniform x-nodes (i/N)^s.
template <class R>
SolveReport<R> method3_solve(const ProblemSpec<R>& p, const SolveConfig<R>& cfg) {
    if (p.beta.kind != BetaSpec::Kind::Rational)
        throw std::invalid_argument("method3_solve: beta is not rational");
    if (p.boundary.kind == BoundaryKind::Robin)
        throw std::invalid_argument("method3_solve: Robin conditions are not supported for rational beta");
    const int n = p.beta.r - p.beta.s + 1;  // >= 2 since r > s
    const int s = p.beta.s;
    const UniformGrid<R> grid(cfg.intervals);
    const QuadPlan<R> plan = QuadPlan<R>::beta_integer(grid, n);

    const auto g = [&](R y, R v) {
        R ypow(1);
        for (int q = 0; q < 2 * s - 2; ++q) ypow *= y;
        R xs(1);
        for (int q = 0; q < s; ++q) xs *= y;
        return R(s) * R(s) * ypow * p.f(xs, v);
    };
    const auto step = [&](const GridFunction<R>& phi) { return method2_step(plan, phi, p.alpha); };

    SolveReport<R> rep = detail::iterate(grid, g, step, p.init, p.alpha, cfg);
    for (int i = 0; i <= grid.intervals(); ++i) {
        R xs(1);
        for (int q = 0; q < s; ++q) xs *= grid.node(i);
        rep.nodes[static_cast<std::size_t>(i)] = xs;
    }
    return rep;
}

/// Fixed-point driver: Phi_0 from the problem's initial iterate, then
/// alternate the linear method step with Phi_{k+1}(x_i) = f(x_i, U_k(x_i))
/// until max |Phi_{k+1} - Phi_k| <= tol. Deterministic and sequential.
template <class R>
SolveReport<R> solve(const ProblemSpec<R>& p, const SolveConfig<R>& cfg) {
    if (!p.f) throw std::invalid_argument("solve: problem has no right-hand side");
    if (p.beta.kind == BetaSpec::Kind::Rational) return method3_solve(p, cfg);

    const UniformGrid<R> grid(cfg.intervals);
    const QuadPlan<R> plan = (p.beta.kind == BetaSpec::Kind::One)
                                 ? QuadPlan<R>::beta_one(grid)
                                 : QuadPlan<R>::beta_integer(grid, p.beta.n);
    const bool robin = p.boundary.kind == BoundaryKind::Robin;
    if (robin && !(p.boundary.mu > R(0)))
        throw std::invalid_argument("solve: Robin condition needs mu > 0");

    const auto step = [&](const GridFunction<R>& phi) {
        if (robin) return robin_step(plan, phi, p.boundary.mu, p.boundary.sigma, p.alpha);
        return (p.beta.kind == BetaSpec::Kind::One) ? method1_step(plan, phi, p.alpha)
                                                    : method2_step(plan, phi, p.alpha);
    };
    return detail::iterate(grid, p.f, step, p.init, p.alpha, cfg);
}

}  // namespace lane8
