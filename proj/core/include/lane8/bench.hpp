#pragma once

#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lane8/problems.hpp"
#include "lane8/solver.hpp"

namespace lane8 {

/// One row of a convergence table.
template <class R>
struct RunResult {
    std::string example;
    int intervals = 0;   // N
    int iterations = 0;  // k
    R error{};           // E: against the exact solution, or double-mesh
    std::optional<R> order;
    bool floored = false;  // E below 100*eps: orders around it are meaningless
    double seconds = 0;
    Termination termination = Termination::Converged;
};

/// Rows at N = N0 * 2^j sharing one configuration.
template <class R>
struct Sweep {
    std::vector<RunResult<R>> runs;

    bool all_converged() const {
        for (const auto& r : runs)
            if (r.termination != Termination::Converged) return false;
        return true;
    }
};

/// max_i |U(x_i) - exact(x_i)| on the report's own nodes (for Method-3
/// results these are the induced non-uniform points).
template <class R>
R error_exact(const SolveReport<R>& rep, const std::function<R(R)>& exact) {
    R m(0);
    for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
        const R d = abs(rep.u[static_cast<int>(i)] - exact(rep.nodes[i]));
        if (d > m) m = d;
    }
    return m;
}

/// Double-mesh error max_i |U_N(x_i) - U_2N(x_2i)| over the coarse nodes.
template <class R>
R error_double_mesh(const GridFunction<R>& coarse, const GridFunction<R>& fine) {
    if (fine.intervals() != 2 * coarse.intervals())
        throw std::invalid_argument("error_double_mesh: grids are not nested (" +
                                    std::to_string(coarse.intervals()) + " vs " +
                                    std::to_string(fine.intervals()) + ")");
    R m(0);
    for (int i = 0; i <= coarse.intervals(); ++i) {
        const R d = abs(coarse[i] - fine[2 * i]);
        if (d > m) m = d;
    }
    return m;
}

/// log2(E_coarse / E_fine); nullopt marks an unreliable order (vanishing or
/// precision-floored fine error).
template <class R>
std::optional<R> convergence_order(R e_coarse, R e_fine) {
    if (!(e_coarse > R(0)) || !(e_fine > R(0))) return std::nullopt;
    if (e_fine < R(100) * scalar_traits<R>::epsilon()) return std::nullopt;
    return log2(e_coarse / e_fine);
}

template <class R>
Sweep<R> run_sweep(const ExampleDef<R>& def, int n0, int levels, const SolveConfig<R>& base);

/// Solves the registry example at N0, 2*N0, ..., measures E per level (exact
/// solution if the example has one, double-mesh otherwise), and attaches
/// empirical orders.
template <class R>
Sweep<R> run_sweep(const std::string& example_id, int n0, int levels, const SolveConfig<R>& base) {
    return run_sweep(find_example<R>(example_id), n0, levels, base);
}

template <class R>
Sweep<R> run_sweep(const ExampleDef<R>& def, int n0, int levels, const SolveConfig<R>& base) {
    if (levels < 1) throw std::invalid_argument("run_sweep: levels must be >= 1");
    const bool have_exact = static_cast<bool>(def.exact);
    const int solves = have_exact ? levels : levels + 1;

    std::vector<SolveReport<R>> reports;
    std::vector<double> times;
    reports.reserve(static_cast<std::size_t>(solves));
    for (int j = 0; j < solves; ++j) {
        SolveConfig<R> cfg = base;
        cfg.intervals = n0 << j;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            reports.push_back(solve(def.spec, cfg));
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep level N=" + std::to_string(cfg.intervals) + ": " +
                                     e.what());
        }
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }

    Sweep<R> sweep;
    const R floor = R(100) * scalar_traits<R>::epsilon();
    for (int j = 0; j < levels; ++j) {
        RunResult<R> row;
        row.example = def.id;
        row.intervals = n0 << j;
        row.iterations = reports[static_cast<std::size_t>(j)].iterations;
        row.termination = reports[static_cast<std::size_t>(j)].termination;
        row.seconds = times[static_cast<std::size_t>(j)];
        row.error = have_exact
                        ? error_exact(reports[static_cast<std::size_t>(j)], def.exact)
                        : error_double_mesh(reports[static_cast<std::size_t>(j)].u,
                                            reports[static_cast<std::size_t>(j) + 1].u);
        row.floored = row.error < floor;
        if (j > 0 && !row.floored && !sweep.runs.back().floored)
            row.order = convergence_order(sweep.runs.back().error, row.error);
        sweep.runs.push_back(std::move(row));
    }
    return sweep;
}

namespace detail {

template <class R>
std::string table_err(R e) {
    return scalar_traits<R>::str(e, 5);
}

template <class R>
std::string table_order(const std::optional<R>& o, bool floored) {
    if (floored) return "floored";
    if (!o) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", static_cast<double>(*o));
    return buf;
}

template <class R>
std::string row_flag(const RunResult<R>& r) {
    if (r.termination != Termination::Converged) return name(r.termination);
    if (r.floored) return "floored";
    return "";
}

}  // namespace detail

template <class R>
std::string to_csv(const Sweep<R>& s) {
    std::ostringstream os;
    os << "example,N,k,E,order,flag,seconds\n";
    for (const auto& r : s.runs) {
        os << r.example << ',' << r.intervals << ',' << r.iterations << ','
           << detail::table_err(r.error) << ',' << detail::table_order(r.order, false) << ','
           << detail::row_flag(r) << ',';
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", r.seconds);
        os << buf << '\n';
    }
    return os.str();
}

template <class R>
std::string to_markdown(const Sweep<R>& s) {
    std::ostringstream os;
    os << "| example | N | k | E | order | flag | seconds |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const auto& r : s.runs) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", r.seconds);
        os << "| " << r.example << " | " << r.intervals << " | " << r.iterations << " | "
           << detail::table_err(r.error) << " | " << detail::table_order(r.order, false) << " | "
           << detail::row_flag(r) << " | " << buf << " |\n";
    }
    return os.str();
}

/// One JSON object per line, keys matching the CSV columns.
template <class R>
std::string to_jsonl(const Sweep<R>& s) {
    std::ostringstream os;
    for (const auto& r : s.runs) {
        os << "{\"example\":\"" << r.example << "\",\"N\":" << r.intervals
           << ",\"k\":" << r.iterations << ",\"E\":\"" << scalar_traits<R>::str(r.error) << "\"";
        if (r.order) os << ",\"order\":\"" << scalar_traits<R>::str(*r.order, 8) << "\"";
        const std::string flag = detail::row_flag(r);
        if (!flag.empty()) os << ",\"flag\":\"" << flag << "\"";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", r.seconds);
        os << ",\"seconds\":" << buf << "}\n";
    }
    return os.str();
}

}  // namespace lane8
