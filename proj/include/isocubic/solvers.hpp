#pragma once

#include "isocubic/algebra.hpp"
#include "isocubic/operators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace isocubic {

/// Truncated-inverse choices for the inexact Newton scheme, with
/// B1 = [L., X] + [LX, .] and B2 = (L.)X(LX) + (LX).(LX) + (LX)X(L.):
///   v1: I + h B1
///   v2: I + h B1 + h^2 B2            (default; best in practice)
///   v3: I + h B1 + h^2 B1^2
///   v4: I + h B1 + h^2 (B1^2 + B2)   (full third-order expansion)
enum class NewtonVariant { v1, v2, v3, v4 };

std::string to_string(NewtonVariant v);
NewtonVariant parse_newton_variant(const std::string& s);

enum class SolverKind { explicit_fp, linear, newton };

std::string to_string(SolverKind k);
SolverKind parse_solver_kind(const std::string& s);

struct SolverConfig {
    double h = 0.0;
    double tol = 1e-10;
    int max_iter = 500;
    NewtonVariant newton_variant = NewtonVariant::v2;
    /// Starting iterate; X_0 = Y when absent.
    std::optional<AlgebraElement> initial_guess;

    void validate() const;
};

enum class StopReason { converged, max_iterations, diverged };

struct SolverReport {
    bool converged = false;
    StopReason reason = StopReason::max_iterations;
    int iterations = 0;
    double final_step_norm = 0.0;
    /// ||F(X)|| = ||(I - hLX)X(I + hLX) - Y|| at the returned iterate.
    double residual_norm = 0.0;
    /// Per-iteration step norms ||X_{k+1} - X_k||.
    std::vector<double> history;
};

struct SolveResult {
    AlgebraElement x;
    SolverReport report;
};

/// F_h(X) = Y + h [LX, X] + h^2 (LX) X (LX); fixed points solve the cubic
/// equation (I - hLX) X (I + hLX) = Y.
AlgebraElement fixed_point_map(const AlgebraElement& x, const AlgebraElement& y,
                               const LinearOperator& op, double h);

/// S_h(X) = (I - hLX)^{-1} Y (I + hLX)^{-1}, two triangular-solve passes over
/// one LU factorization per block.
AlgebraElement linear_update(const AlgebraElement& x, const AlgebraElement& y,
                             const LinearOperator& op, double h);

/// F(X) = X - h [LX, X] - h^2 (LX) X (LX) - Y.
AlgebraElement residual(const AlgebraElement& x, const AlgebraElement& y,
                        const LinearOperator& op, double h);

/// DF(X)[Z] = Z - h([LZ,X] + [LX,Z]) - h^2((LZ)X(LX) + (LX)Z(LX) + (LX)X(LZ)).
AlgebraElement jacobian_apply(const AlgebraElement& x, const AlgebraElement& z,
                              const LinearOperator& op, double h);

/// Approximate DF(X)^{-1}[R] per the selected variant.
AlgebraElement newton_correction(const AlgebraElement& x, const AlgebraElement& r,
                                 const LinearOperator& op, double h, NewtonVariant variant);

SolveResult solve_explicit(const AlgebraElement& y, const LinearOperator& op,
                           const SolverConfig& cfg);
SolveResult solve_linear(const AlgebraElement& y, const LinearOperator& op,
                         const SolverConfig& cfg);
SolveResult solve_newton(const AlgebraElement& y, const LinearOperator& op,
                         const SolverConfig& cfg);

SolveResult solve_with(SolverKind kind, const AlgebraElement& y, const LinearOperator& op,
                       const SolverConfig& cfg);

/// Contraction guarantee of the fixed-point iteration: 1/(3 ||L||op ||Y||).
/// Rejects Y = 0 (the bound is undefined there).
double theorem_h_bound(const AlgebraElement& y, const LinearOperator& op);

}  // namespace isocubic
