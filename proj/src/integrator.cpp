#include "isocubic/integrator.hpp"

#include <cmath>

namespace isocubic {

StepFailureError::StepFailureError(int step, SolverReport rep)
    : std::runtime_error("integrator step " + std::to_string(step) +
                         ": inner solver did not converge (" +
                         std::to_string(rep.iterations) + " iterations)"),
      step_index(step),
      report(std::move(rep)) {}

void IntegratorConfig::validate() const {
    if (n_steps < 1) throw std::invalid_argument("IntegratorConfig: n_steps must be >= 1");
    if (record_every < 1) throw std::invalid_argument("IntegratorConfig: record_every must be >= 1");
    SolverConfig c = solver_cfg;
    c.h = h;
    c.validate();
}

StepResult step(const AlgebraElement& y, const LinearOperator& op, double h,
                SolverKind solver, const SolverConfig& solver_cfg, int step_index) {
    SolverConfig cfg = solver_cfg;
    cfg.h = h;
    cfg.initial_guess.reset();
    SolveResult sol = solve_with(solver, y, op, cfg);
    if (!sol.report.converged) {
        throw StepFailureError(step_index, sol.report);
    }
    const AlgebraElement p = op.apply(sol.x);
    // The Cayley conjugation preserves skewness exactly; the projection only
    // strips per-step roundoff so it cannot accumulate over long trajectories.
    AlgebraElement y_next = project_skew(triple_product(p, sol.x, -h));
    return StepResult{std::move(y_next), std::move(sol.x), std::move(sol.report)};
}

double hamiltonian(const AlgebraElement& y, const LinearOperator& op) {
    if (y.shape() != op.shape()) throw ShapeMismatchError("hamiltonian: shape mismatch");
    const AlgebraElement ly = op.apply(y);
    double s = 0.0;
    for (int i = 0; i < y.block_count(); ++i) {
        s += (y.block(i) * ly.block(i)).trace().real();
    }
    return 0.5 * s;
}

namespace {

double drift_against(const std::vector<std::vector<double>>& base,
                     const std::vector<std::vector<double>>& now) {
    double worst = 0.0;
    for (std::size_t b = 0; b < base.size(); ++b) {
        for (std::size_t k = 0; k < base[b].size(); ++k) {
            worst = std::max(worst, std::abs(now[b][k] - base[b][k]));
        }
    }
    return worst;
}

}  // namespace

TrajectoryDiagnostics run(const AlgebraElement& y0, const LinearOperator& op,
                          const IntegratorConfig& cfg) {
    cfg.validate();
    TrajectoryDiagnostics diag;
    auto record = [&](int n, const AlgebraElement& y, int iters) {
        diag.steps.push_back(n);
        diag.times.push_back(n * cfg.h);
        diag.hamiltonian.push_back(hamiltonian(y, op));
        diag.spectra.push_back(hermitian_eigenvalues(y));
        diag.spectral_drift.push_back(
            diag.spectra.size() == 1 ? 0.0 : drift_against(diag.spectra.front(), diag.spectra.back()));
        diag.solver_iterations.push_back(iters);
    };
    record(0, y0, 0);
    AlgebraElement y = y0;
    for (int n = 1; n <= cfg.n_steps; ++n) {
        StepResult r = step(y, op, cfg.h, cfg.solver, cfg.solver_cfg, n);
        y = std::move(r.y_next);
        if (n % cfg.record_every == 0 || n == cfg.n_steps) {
            record(n, y, r.report.iterations);
        }
    }
    return diag;
}

double conjugacy_check(const AlgebraElement& y, const LinearOperator& op, double h,
                       SolverKind solver, const SolverConfig& solver_cfg) {
    SolverConfig cfg = solver_cfg;
    cfg.h = h;
    cfg.initial_guess.reset();

    // chi^{-1}: X_n from Y_n.
    SolveResult s0 = solve_with(solver, y, op, cfg);
    if (!s0.report.converged) throw StepFailureError(0, s0.report);

    // phi^M(Y_n) = Y_{n+1}, the explicit half applied to X_n.
    const AlgebraElement y1 = triple_product(op.apply(s0.x), s0.x, -h);

    // phi^T(X_n) = chi^{-1}(Y_{n+1}).
    SolveResult s1 = solve_with(solver, y1, op, cfg);
    if (!s1.report.converged) throw StepFailureError(1, s1.report);

    // chi(phi^T(X_n)) should reproduce phi^M(Y_n).
    const AlgebraElement y1_via_chi = triple_product(op.apply(s1.x), s1.x, h);
    return frobenius_norm(y1 - y1_via_chi);
}

}  // namespace isocubic
