#pragma once

#include "isocubic/algebra.hpp"

namespace isocubic {

/// Thrown when the su(2) quadratic sub-equation has no real solution branch.
struct NoRealSolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// su(2) ~ R^3 under v -> -(i/2) v.sigma, which carries the cross product to
/// the commutator: [phi(a), phi(b)] = phi(a x b).
using Su2Vector = Eigen::Vector3d;

/// The 2x2 skew-Hermitian traceless matrix -(i/2)(v . sigma).
Matrix su2_to_matrix(const Su2Vector& v);
/// Inverse of su2_to_matrix; requires a 2x2 traceless skew-Hermitian input.
Su2Vector su2_from_matrix(const Matrix& m);
/// Single-block element wrapper around su2_to_matrix.
AlgebraElement su2_element(const Su2Vector& v);

/// Residual of the quadratic sub-equation, h^2 PXP + h [P,X] + Y - X,
/// blockwise for any shape. Zero exactly when (I - hP) X (I + hP) = Y.
AlgebraElement care_residual(const AlgebraElement& p, const AlgebraElement& x,
                             const AlgebraElement& y, double h);

/// y such that p solves the su(2) quadratic sub-equation for the pair (x, y):
/// y = x - h (p x x) - (h^2/4)(|p|^2 x - 2 (p.x) p). Used to manufacture
/// admissible instances.
Su2Vector su2_care_forward(const Su2Vector& x, const Su2Vector& p, double h);

struct RiccatiBranches {
    Su2Vector p_parallel_plus;
    Su2Vector p_parallel_minus;
    Su2Vector p_perp_plus;
    Su2Vector p_perp_minus;
    double residual_plus = 0.0;
    double residual_minus = 0.0;
    /// Whether the two branches differ (the parallel component is nonzero).
    bool distinct = false;

    Su2Vector branch_plus() const { return p_parallel_plus + p_perp_plus; }
    Su2Vector branch_minus() const { return p_parallel_minus + p_perp_minus; }
};

/// Both closed-form solution branches of the su(2) quadratic sub-equation.
///
/// Splitting p into components along x and orthogonal to it reduces the
/// equation to
///
///   (h^2/4)(|p_perp|^2 - beta^2) + (kappa - 1) = 0,        p_par = beta x^,
///   -(h^2 beta ||x|| / 2) p_perp + h (p_perp x x) = -y_perp,
///
/// with kappa the coefficient of y along x. Eliminating |p_perp| through the
/// second (rotational, always invertible) equation turns the first into a
/// scalar quadratic in t = beta^2 with a single admissible root; beta = ±√t
/// gives the two branches, certifying the non-uniqueness that makes the
/// quadratic iteration unusable as a solver.
///
/// Admissible data satisfies ||y_perp||^2 + 4(kappa - 1)||x||^2 >= 0;
/// otherwise NoRealSolutionError is thrown. h must be positive and x nonzero.
RiccatiBranches solve_su2_branches(const Su2Vector& x, const Su2Vector& y, double h);

}  // namespace isocubic
