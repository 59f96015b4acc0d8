#pragma once

#include "isocubic/solvers.hpp"

namespace isocubic {

/// Thrown when the implicit stage of a time step fails to converge.
struct StepFailureError : std::runtime_error {
    StepFailureError(int step, SolverReport rep);
    int step_index;
    SolverReport report;
};

struct IntegratorConfig {
    double h = 0.1;
    int n_steps = 1;
    SolverKind solver = SolverKind::linear;
    SolverConfig solver_cfg;
    /// Diagnostics (spectra, Hamiltonian) are recorded every this many steps;
    /// step 0 and the final step are always recorded.
    int record_every = 1;

    void validate() const;
};

struct StepResult {
    AlgebraElement y_next;
    AlgebraElement x;
    SolverReport report;
};

/// One step of the two-stage isospectral scheme: solve
/// (I - hLX) X (I + hLX) = Y_n implicitly, then push forward explicitly via
/// Y_{n+1} = (I + hLX) X (I - hLX), i.e. the triple product with h -> -h.
/// Y_{n+1} is unitarily conjugate to Y_n (Cayley), so the spectrum, the
/// trace, and skew-Hermitianity are preserved exactly.
StepResult step(const AlgebraElement& y, const LinearOperator& op, double h,
                SolverKind solver, const SolverConfig& solver_cfg, int step_index = 0);

/// H(Y) = 1/2 sum_i Re tr(Y_i (LY)_i); a conserved quantity of the flow when
/// L is self-adjoint.
double hamiltonian(const AlgebraElement& y, const LinearOperator& op);

struct TrajectoryDiagnostics {
    std::vector<int> steps;
    std::vector<double> times;
    std::vector<double> hamiltonian;
    /// Per recorded step: per block, ascending eigenvalues of i*Y_b.
    std::vector<std::vector<std::vector<double>>> spectra;
    /// max_{block,k} |lambda_k(Y_n) - lambda_k(Y_0)|.
    std::vector<double> spectral_drift;
    std::vector<int> solver_iterations;
};

TrajectoryDiagnostics run(const AlgebraElement& y0, const LinearOperator& op,
                          const IntegratorConfig& cfg);

/// Defect of the conjugacy identity phi^M = chi ∘ phi^T ∘ chi^{-1}, where
/// chi(X) = (I - hLX)X(I + hLX) and phi^T advances the X-iterates. Both sides
/// are evaluated through the implemented maps, so the defect is bounded by
/// the accuracy of the inner solves.
double conjugacy_check(const AlgebraElement& y, const LinearOperator& op, double h,
                       SolverKind solver, const SolverConfig& solver_cfg);

}  // namespace isocubic
