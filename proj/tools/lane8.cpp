// Command-line front end: solve single problems, run convergence sweeps,
// inspect the example registry, and run the contraction precheck.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lane8/bench.hpp"
#include "lane8/problems.hpp"
#include "lane8/report_io.hpp"
#include "lane8/solver.hpp"

namespace {

using lane8::Precision;

struct ProblemArgs {
    std::string example;
    std::string problem_file;
    std::string beta;
    std::string alpha = "0";
    std::string rhs;
    std::vector<std::string> robin;  // mu sigma
};

struct RunArgs {
    ProblemArgs prob;
    int intervals = 64;
    std::string tol;  // empty -> mode default
    int max_iter = 100;
    std::string precision;  // empty -> env -> ext
    std::string out = "-";
    std::string format = "md";
    // sweep
    int n0 = 8;
    int levels = 4;
    // check
    std::string big_m, lipschitz;
};

Precision resolve_precision(const std::string& flag) {
    if (!flag.empty()) return lane8::parse_precision(flag);
    if (const char* env = std::getenv("LANE8_PRECISION")) return lane8::parse_precision(env);
    return Precision::Extended;
}

void add_problem_flags(CLI::App* cmd, ProblemArgs& p) {
    cmd->add_option("--example", p.example, "registry id (see `lane8 examples`)");
    cmd->add_option("--problem-file", p.problem_file, "problem definition file");
    cmd->add_option("--beta", p.beta, "singular coefficient: 1, an integer, or r/s");
    cmd->add_option("--alpha", p.alpha, "boundary value at x = 1");
    cmd->add_option("--rhs", p.rhs, "right-hand side f(x,u), e.g. \"exp(u)\"");
    cmd->add_option("--robin", p.robin, "Robin condition mu sigma")->expected(2);
}

template <class R>
lane8::ExampleDef<R> build_problem(const ProblemArgs& p) {
    const int sources = (!p.example.empty() ? 1 : 0) + (!p.problem_file.empty() ? 1 : 0) +
                        ((!p.beta.empty() || !p.rhs.empty()) ? 1 : 0);
    if (sources != 1)
        throw std::invalid_argument(
            "give exactly one of --example, --problem-file, or --beta/--rhs");
    if (!p.robin.empty() && (p.beta.empty() || p.rhs.empty()))
        throw std::invalid_argument("--robin applies only to --beta/--rhs problems");
    if (!p.example.empty()) return lane8::find_example<R>(p.example);
    if (!p.problem_file.empty()) {
        std::ifstream in(p.problem_file);
        if (!in) throw std::invalid_argument("cannot open problem file '" + p.problem_file + "'");
        auto stem = p.problem_file;
        if (const auto slash = stem.find_last_of('/'); slash != std::string::npos)
            stem = stem.substr(slash + 1);
        if (const auto dot = stem.find_last_of('.'); dot != std::string::npos)
            stem = stem.substr(0, dot);
        return lane8::parse_problem_file<R>(in, stem);
    }
    if (p.beta.empty() || p.rhs.empty())
        throw std::invalid_argument("custom problems need both --beta and --rhs");
    lane8::ExampleDef<R> def;
    def.id = "custom";
    def.title = "command-line problem";
    def.spec.beta = lane8::parse_beta(p.beta);
    def.spec.alpha = lane8::scalar_traits<R>::parse(p.alpha);
    const lane8::Expr e = lane8::parse_rhs(p.rhs);
    def.spec.f = [e](R x, R u) { return lane8::eval_expr<R>(e, x, u); };
    if (!p.robin.empty())
        def.spec.boundary = {lane8::BoundaryKind::Robin,
                             lane8::scalar_traits<R>::parse(p.robin[0]),
                             lane8::scalar_traits<R>::parse(p.robin[1])};
    return def;
}

template <class R>
lane8::SolveConfig<R> build_config(const RunArgs& a, int intervals) {
    lane8::SolveConfig<R> cfg;
    cfg.intervals = intervals;
    if (!a.tol.empty()) cfg.tol = lane8::scalar_traits<R>::parse(a.tol);
    cfg.max_iter = a.max_iter;
    return cfg;
}

// payload goes to stdout or --out; logs go to stderr
void emit(const RunArgs& a, const std::string& payload) {
    if (a.out == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(a.out);
    if (!out) throw std::runtime_error("cannot write '" + a.out + "'");
    out << payload;
    std::clog << "wrote " << a.out << "\n";
}

int exit_code(lane8::Termination t) {
    switch (t) {
        case lane8::Termination::Converged: return 0;
        case lane8::Termination::MaxIter: return 2;
        default: return 3;
    }
}

template <class R>
int run_solve(const RunArgs& a) {
    const auto def = build_problem<R>(a.prob);
    const auto cfg = build_config<R>(a, a.intervals);
    const auto rep = lane8::solve(def.spec, cfg);

    std::ostringstream os;
    if (a.format == "json") {
        os << lane8::report_to_json(rep, def.spec, def.id == "custom" ? "" : def.id, a.intervals)
                  .dump(2)
           << "\n";
    } else if (a.format == "csv") {
        os << "# example=" << def.id << " beta=" << def.spec.beta.str() << " N=" << a.intervals
           << " precision=" << name(lane8::scalar_traits<R>::mode)
           << " iterations=" << rep.iterations << " termination=" << name(rep.termination) << "\n";
        os << "i,x,u\n";
        for (std::size_t i = 0; i < rep.nodes.size(); ++i)
            os << i << ',' << lane8::scalar_traits<R>::str(rep.nodes[i]) << ','
               << lane8::scalar_traits<R>::str(rep.u[static_cast<int>(i)]) << "\n";
    } else if (a.format == "md") {
        os << "example: " << def.id << "  beta: " << def.spec.beta.str() << "  N: " << a.intervals
           << "  precision: " << name(lane8::scalar_traits<R>::mode) << "\n";
        os << "iterations: " << rep.iterations << "  termination: " << name(rep.termination)
           << "\n\n";
        os << "| i | x | u |\n|---|---|---|\n";
        for (std::size_t i = 0; i < rep.nodes.size(); ++i)
            os << "| " << i << " | " << lane8::scalar_traits<R>::str(rep.nodes[i], 17) << " | "
               << lane8::scalar_traits<R>::str(rep.u[static_cast<int>(i)], 17) << " |\n";
    } else {
        throw std::invalid_argument("unknown format '" + a.format + "' (csv|md|json)");
    }
    emit(a, os.str());
    std::clog << def.id << ": " << name(rep.termination) << " after " << rep.iterations
              << " iterations\n";
    return exit_code(rep.termination);
}

template <class R>
int run_sweep(const RunArgs& a) {
    const auto def = build_problem<R>(a.prob);
    const auto cfg = build_config<R>(a, a.n0);
    const auto sweep = lane8::run_sweep(def, a.n0, a.levels, cfg);

    std::string payload;
    if (a.format == "csv") payload = lane8::to_csv(sweep);
    else if (a.format == "md") payload = lane8::to_markdown(sweep);
    else if (a.format == "json" || a.format == "jsonl") payload = lane8::to_jsonl(sweep);
    else throw std::invalid_argument("unknown format '" + a.format + "' (csv|md|json)");
    emit(a, payload);

    int worst = 0;
    for (const auto& r : sweep.runs) {
        if (r.termination != lane8::Termination::Converged)
            std::clog << "level N=" << r.intervals << " " << name(r.termination) << "\n";
        worst = std::max(worst, exit_code(r.termination));
    }
    return worst;
}

template <class R>
int run_check(const RunArgs& a) {
    const auto def = build_problem<R>(a.prob);
    std::optional<R> m, l;
    if (!a.big_m.empty()) m = lane8::scalar_traits<R>::parse(a.big_m);
    else if (def.big_m) m = *def.big_m;
    if (!a.lipschitz.empty()) l = lane8::scalar_traits<R>::parse(a.lipschitz);
    else if (def.lipschitz) l = *def.lipschitz;
    if (!m || !l)
        throw std::invalid_argument("check needs --bigM and --lipschitz (no defaults for '" +
                                    def.id + "')");
    const auto w = lane8::check_wellposedness(def.spec, *m, *l);
    std::ostringstream os;
    os << "beta: " << def.spec.beta.str() << "\n";
    os << "q = L/(2(beta+1)) = " << lane8::scalar_traits<R>::str(w.q, 17) << "\n";
    os << "|u|  bound: " << lane8::scalar_traits<R>::str(w.u_bound, 17) << "\n";
    os << "|u'| bound: " << lane8::scalar_traits<R>::str(w.du_bound, 17) << "\n";
    os << "contractive: " << (w.contractive ? "yes" : "no") << "\n";
    emit(a, os.str());
    return w.contractive ? 0 : 4;
}

template <class R>
int run_examples(const RunArgs& a) {
    std::ostringstream os;
    os << "| id | beta | alpha | boundary | exact | M,L | description |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const auto& d : lane8::registry<R>()) {
        os << "| " << d.id << " | " << d.spec.beta.str() << " | "
           << lane8::scalar_traits<R>::str(d.spec.alpha, 6) << " | ";
        if (d.spec.boundary.kind == lane8::BoundaryKind::Robin)
            os << "robin mu=" << lane8::scalar_traits<R>::str(d.spec.boundary.mu, 3)
               << " sigma=" << lane8::scalar_traits<R>::str(d.spec.boundary.sigma, 3);
        else
            os << "dirichlet";
        os << " | " << (d.exact ? "yes" : "no") << " | " << (d.big_m ? "yes" : "-") << " | "
           << d.title << " (" << d.label << ") |\n";
    }
    emit(a, os.str());
    return 0;
}

int dispatch(int (*fd)(const RunArgs&), int (*fq)(const RunArgs&), const RunArgs& a) {
    return resolve_precision(a.precision) == Precision::Standard ? fd(a) : fq(a);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eighth-order iterative solver for singular Lane-Emden boundary value problems"};
    app.require_subcommand(1);

    RunArgs args;

    CLI::App* solve = app.add_subcommand("solve", "solve one problem and print the grid solution");
    add_problem_flags(solve, args.prob);
    solve->add_option("--n", args.intervals, "grid intervals (N >= 8)")->capture_default_str();
    solve->add_option("--tol", args.tol, "stopping tolerance (default 1e-22 ext, 1e-14 std)");
    solve->add_option("--max-iter", args.max_iter, "iteration cap")->capture_default_str();
    solve->add_option("--precision", args.precision, "std|ext (default ext; env LANE8_PRECISION)");
    solve->add_option("--out", args.out, "output path or - for stdout")->capture_default_str();
    solve->add_option("--format", args.format, "csv|md|json")->capture_default_str();

    CLI::App* sweep = app.add_subcommand("sweep", "convergence sweep over N = n0 * 2^j");
    add_problem_flags(sweep, args.prob);
    sweep->add_option("--n0", args.n0, "coarsest interval count")->capture_default_str();
    sweep->add_option("--levels", args.levels, "number of rows")->capture_default_str();
    sweep->add_option("--tol", args.tol, "stopping tolerance");
    sweep->add_option("--max-iter", args.max_iter, "iteration cap")->capture_default_str();
    sweep->add_option("--precision", args.precision, "std|ext");
    sweep->add_option("--out", args.out, "output path or - for stdout")->capture_default_str();
    sweep->add_option("--format", args.format, "csv|md|json")->capture_default_str();

    CLI::App* check = app.add_subcommand("check", "contraction precheck q = L/(2(beta+1))");
    add_problem_flags(check, args.prob);
    check->add_option("--bigM", args.big_m, "bound M on |f| over the solution domain");
    check->add_option("--lipschitz", args.lipschitz, "Lipschitz constant L of f in u");
    check->add_option("--precision", args.precision, "std|ext");
    check->add_option("--out", args.out, "output path or - for stdout")->capture_default_str();

    CLI::App* examples = app.add_subcommand("examples", "list the built-in benchmark problems");
    examples->add_option("--precision", args.precision, "std|ext");
    examples->add_option("--out", args.out, "output path or - for stdout")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (solve->parsed()) return dispatch(&run_solve<double>, &run_solve<lane8::Real128>, args);
        if (sweep->parsed()) return dispatch(&run_sweep<double>, &run_sweep<lane8::Real128>, args);
        if (check->parsed()) return dispatch(&run_check<double>, &run_check<lane8::Real128>, args);
        return dispatch(&run_examples<double>, &run_examples<lane8::Real128>, args);
    } catch (const lane8::ParseError& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
