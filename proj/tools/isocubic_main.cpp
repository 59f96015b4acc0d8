// Command-line front end: single-equation solves, trajectory evolution,
// benchmark sweeps over the size ladder, and the su(2) quadratic-scheme
// non-uniqueness demo.
//
// Exit codes: 0 ok, 1 usage error, 2 non-convergence / no real solution,
// 3 trajectory aborted mid-run.

#include "isocubic/bench.hpp"
#include "isocubic/integrator.hpp"
#include "isocubic/oracle.hpp"
#include "isocubic/riccati.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace isocubic;

struct SolveArgs {
    std::string model = "euler";
    int n = 9;
    double h = 0.5;
    std::string solver = "linear";
    std::uint64_t seed = 42;
    double tol = 1e-10;
    int max_iter = 500;
    std::string variant = "v2";
    double lambda = 5.0;
    std::string out;
};

int cmd_solve(const SolveArgs& a) {
    const Model model = parse_model(a.model);
    const auto op = make_operator(model, a.n, a.lambda);
    SolverConfig cfg;
    cfg.h = a.h;
    cfg.tol = a.tol;
    cfg.max_iter = a.max_iter;
    cfg.newton_variant = parse_newton_variant(a.variant);
    const SolverKind kind = parse_solver_kind(a.solver);

    const AlgebraElement y = random_initial(model, a.n, a.seed);
    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult res = solve_with(kind, y, *op, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    const double wall = std::chrono::duration<double>(t1 - t0).count();

    const double certificate =
        frobenius_norm(triple_product(op->apply(res.x), res.x, a.h) - y);
    std::cout << "model=" << a.model << " N=" << a.n << " h=" << a.h
              << " solver=" << a.solver << " seed=" << a.seed << "\n"
              << "converged: " << (res.report.converged ? "yes" : "no") << "\n"
              << "iterations: " << res.report.iterations << "\n"
              << "final_step_norm: " << format_sci(res.report.final_step_norm) << "\n"
              << "residual_norm: " << format_sci(res.report.residual_norm) << "\n"
              << "certificate |(I-hLX)X(I+hLX)-Y|: " << format_sci(certificate)
              << (res.report.converged
                      ? (certificate <= 10.0 * a.tol ? "  (<= 10*tol)" : "  (EXCEEDS 10*tol)")
                      : "")
              << "\n"
              << "wall_s: " << format_sci(wall) << "\n";

    if (!a.out.empty()) {
        std::ofstream f(a.out);
        if (!f) {
            std::cerr << "cannot write " << a.out << "\n";
            return 1;
        }
        f << "model,N,h,solver,seed,converged,iterations,final_step_norm,residual_norm,wall_s\n"
          << a.model << ',' << a.n << ',' << format_sci(a.h) << ',' << a.solver << ',' << a.seed
          << ',' << (res.report.converged ? 1 : 0) << ',' << res.report.iterations << ','
          << format_sci(res.report.final_step_norm) << ',' << format_sci(res.report.residual_norm)
          << ',' << format_sci(wall) << '\n';
    }
    return res.report.converged ? 0 : 2;
}

struct BenchArgs {
    std::string model = "euler";
    double h = 0.5;
    std::vector<std::string> solvers = {"explicit", "linear", "newton"};
    int max_n = 1025;
    int seeds = 10;
    std::uint64_t seed_base = 42;
    double lambda = 5.0;
    double tol = 1e-10;
    int max_iter = 500;
    std::string variant = "v2";
    std::string out = "bench.csv";
};

int cmd_bench(const BenchArgs& a) {
    const Model model = parse_model(a.model);
    std::vector<SolverKind> kinds;
    for (const auto& s : a.solvers) kinds.push_back(parse_solver_kind(s));
    std::sort(kinds.begin(), kinds.end());
    kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());

    std::vector<BenchRow> rows;
    for (int n : size_ladder(a.max_n)) {
        const auto op = make_operator(model, n, a.lambda);
        for (SolverKind kind : kinds) {
            BenchCell cell;
            cell.model = model;
            cell.n = n;
            cell.h = a.h;
            cell.lambda = a.lambda;
            cell.solver = kind;
            cell.seed_base = a.seed_base;
            cell.seed_count = a.seeds;
            cell.tol = a.tol;
            cell.max_iter = a.max_iter;
            cell.newton_variant = parse_newton_variant(a.variant);
            rows.push_back(run_cell(cell, *op));
            std::cerr << to_string(model) << " N=" << n << " " << to_string(kind) << ": "
                      << (rows.back().converged_frac == 1.0
                              ? "mean_iter=" + std::to_string(rows.back().mean_iterations)
                              : "NC")
                      << "\n";
        }
    }
    std::ofstream f(a.out);
    if (!f) {
        std::cerr << "cannot write " << a.out << "\n";
        return 1;
    }
    f << bench_csv(rows);
    return 0;
}

struct EvolveArgs {
    std::string model = "euler";
    int n = 9;
    double h = 0.1;
    int steps = 100;
    std::string solver = "newton";
    std::uint64_t seed = 42;
    int record_every = 1;
    double lambda = 5.0;
    double tol = 1e-10;
    int max_iter = 500;
    std::string out = "evolve.csv";
};

int cmd_evolve(const EvolveArgs& a) {
    const Model model = parse_model(a.model);
    const auto op = make_operator(model, a.n, a.lambda);
    const SolverKind kind = parse_solver_kind(a.solver);
    SolverConfig cfg;
    cfg.tol = a.tol;
    cfg.max_iter = a.max_iter;

    std::ofstream f(a.out);
    if (!f) {
        std::cerr << "cannot write " << a.out << "\n";
        return 1;
    }
    f << "step,time,hamiltonian,spectral_drift,solver_iters\n";

    AlgebraElement y = random_initial(model, a.n, a.seed);
    const auto spectra0 = hermitian_eigenvalues(y);
    const auto drift_now = [&](const AlgebraElement& yn) {
        const auto sp = hermitian_eigenvalues(yn);
        double worst = 0.0;
        for (std::size_t b = 0; b < sp.size(); ++b) {
            for (std::size_t k = 0; k < sp[b].size(); ++k) {
                worst = std::max(worst, std::abs(sp[b][k] - spectra0[b][k]));
            }
        }
        return worst;
    };
    const auto emit = [&](int n, int iters) {
        f << n << ',' << format_sci(n * a.h) << ',' << format_sci(hamiltonian(y, *op)) << ','
          << format_sci(drift_now(y)) << ',' << iters << '\n';
    };
    emit(0, 0);
    for (int n = 1; n <= a.steps; ++n) {
        try {
            StepResult r = step(y, *op, a.h, kind, cfg, n);
            y = std::move(r.y_next);
            if (n % a.record_every == 0 || n == a.steps) emit(n, r.report.iterations);
        } catch (const StepFailureError& e) {
            f.flush();
            std::cerr << "trajectory aborted at step " << e.step_index << ": " << e.what() << "\n";
            return 3;
        }
    }
    return 0;
}

struct RiccatiArgs {
    std::uint64_t seed = 42;
    std::vector<double> x;
    std::vector<double> y;
    double h = 0.5;
};

int cmd_demo_riccati(const RiccatiArgs& a) {
    Su2Vector x, y;
    if (!a.x.empty() || !a.y.empty()) {
        if (a.x.size() != 3 || a.y.size() != 3) {
            std::cerr << "--x and --y need exactly 3 components each\n";
            return 1;
        }
        x = Su2Vector(a.x[0], a.x[1], a.x[2]);
        y = Su2Vector(a.y[0], a.y[1], a.y[2]);
    } else {
        // Random admissible instance: draw (x, p) and push p through the
        // quadratic map so that (x, y) is solvable by construction.
        detail::GaussianStream g(a.seed);
        for (int i = 0; i < 3; ++i) x[i] = g.next();
        Su2Vector p;
        for (int i = 0; i < 3; ++i) p[i] = g.next();
        y = su2_care_forward(x, p, a.h);
    }
    std::cout << "x = [" << x.transpose() << "]\n";
    std::cout << "y = [" << y.transpose() << "]\n";
    std::cout << "h = " << a.h << "\n";
    try {
        const RiccatiBranches br = solve_su2_branches(x, y, a.h);
        std::cout << "branch +: p_par = [" << br.p_parallel_plus.transpose() << "], p_perp = ["
                  << br.p_perp_plus.transpose() << "], residual = " << format_sci(br.residual_plus)
                  << "\n";
        std::cout << "branch -: p_par = [" << br.p_parallel_minus.transpose() << "], p_perp = ["
                  << br.p_perp_minus.transpose()
                  << "], residual = " << format_sci(br.residual_minus) << "\n";
        std::cout << "verdict: " << (br.distinct ? "NON-UNIQUE" : "UNIQUE") << "\n";
        return 0;
    } catch (const NoRealSolutionError& e) {
        std::cout << "no real solution branch: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure-preserving solvers for the cubic matrix equation "
                 "(I-hLX)X(I+hLX)=Y and the isospectral two-stage integrator built on them"};
    app.require_subcommand(1);
    // --h is a model flag, so the help short name must go.
    app.set_help_flag("--help", "print help");

    SolveArgs sa;
    auto* solve_cmd = app.add_subcommand("solve", "Solve one cubic matrix equation instance");
    solve_cmd->set_help_flag("--help", "print help");
    solve_cmd->add_option("--model", sa.model, "euler|alfven|chain")->check(CLI::IsMember({"euler", "alfven", "chain"}));
    solve_cmd->add_option("--n", sa.n, "model size N");
    solve_cmd->add_option("--h", sa.h, "time step");
    solve_cmd->add_option("--solver", sa.solver, "explicit|linear|newton")->check(CLI::IsMember({"explicit", "linear", "newton"}));
    solve_cmd->add_option("--seed", sa.seed, "RNG seed for Y");
    solve_cmd->add_option("--tol", sa.tol, "stopping tolerance");
    solve_cmd->add_option("--max-iter", sa.max_iter, "iteration cap");
    solve_cmd->add_option("--newton-variant", sa.variant, "v1|v2|v3|v4")->check(CLI::IsMember({"v1", "v2", "v3", "v4"}));
    solve_cmd->add_option("--lambda", sa.lambda, "Drift-Alfven lambda");
    solve_cmd->add_option("--out", sa.out, "optional CSV output path");

    BenchArgs ba;
    auto* bench_cmd = app.add_subcommand("bench", "Benchmark sweep over the size ladder");
    bench_cmd->set_help_flag("--help", "print help");
    bench_cmd->add_option("--model", ba.model, "euler|alfven|chain")->check(CLI::IsMember({"euler", "alfven", "chain"}));
    bench_cmd->add_option("--h", ba.h, "time step");
    bench_cmd->add_option("--solvers", ba.solvers, "subset of explicit,linear,newton")->delimiter(',');
    bench_cmd->add_option("--max-n", ba.max_n, "cap for the size ladder");
    bench_cmd->add_option("--seeds", ba.seeds, "seeds per cell");
    bench_cmd->add_option("--seed-base", ba.seed_base, "first seed");
    bench_cmd->add_option("--lambda", ba.lambda, "Drift-Alfven lambda");
    bench_cmd->add_option("--tol", ba.tol, "stopping tolerance");
    bench_cmd->add_option("--max-iter", ba.max_iter, "iteration cap");
    bench_cmd->add_option("--newton-variant", ba.variant, "v1|v2|v3|v4");
    bench_cmd->add_option("--out", ba.out, "CSV output path");

    EvolveArgs ea;
    auto* evolve_cmd = app.add_subcommand("evolve", "Integrate a trajectory and record diagnostics");
    evolve_cmd->set_help_flag("--help", "print help");
    evolve_cmd->add_option("--model", ea.model, "euler|alfven|chain")->check(CLI::IsMember({"euler", "alfven", "chain"}));
    evolve_cmd->add_option("--n", ea.n, "model size N");
    evolve_cmd->add_option("--h", ea.h, "time step");
    evolve_cmd->add_option("--steps", ea.steps, "number of steps");
    evolve_cmd->add_option("--solver", ea.solver, "explicit|linear|newton")->check(CLI::IsMember({"explicit", "linear", "newton"}));
    evolve_cmd->add_option("--seed", ea.seed, "RNG seed for Y0");
    evolve_cmd->add_option("--record-every", ea.record_every, "recording stride");
    evolve_cmd->add_option("--lambda", ea.lambda, "Drift-Alfven lambda");
    evolve_cmd->add_option("--tol", ea.tol, "stopping tolerance");
    evolve_cmd->add_option("--max-iter", ea.max_iter, "iteration cap");
    evolve_cmd->add_option("--out", ea.out, "CSV output path");

    RiccatiArgs ra;
    auto* ric_cmd = app.add_subcommand("demo-riccati",
                                       "Show both su(2) quadratic-scheme solution branches");
    ric_cmd->set_help_flag("--help", "print help");
    ric_cmd->add_option("--seed", ra.seed, "seed for a random admissible instance");
    ric_cmd->add_option("--x", ra.x, "explicit x vector (3 components)")->expected(3);
    ric_cmd->add_option("--y", ra.y, "explicit y vector (3 components)")->expected(3);
    ric_cmd->add_option("--h", ra.h, "time step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(sa);
        if (bench_cmd->parsed()) return cmd_bench(ba);
        if (evolve_cmd->parsed()) return cmd_evolve(ea);
        if (ric_cmd->parsed()) return cmd_demo_riccati(ra);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
