#pragma once

#include "isocubic/solvers.hpp"

namespace isocubic {

/// Real orthonormal basis of the skew-Hermitian part of a block algebra,
/// generalized Gell-Mann style per block: i(E_jk + E_kj)/√2 and
/// (E_jk - E_kj)/√2 for j < k, the i-scaled traceless diagonal family, and
/// (optionally) the normalized trace direction iI/√n. Coordinates are taken
/// with the pairing Re tr(A*B), so element <-> coordinates is an isometry on
/// skew-Hermitian elements.
class VectorizedProblem {
public:
    VectorizedProblem(const BlockShape& shape, bool include_trace);

    const BlockShape& shape() const { return shape_; }
    int dimension() const { return dim_; }

    Eigen::VectorXd coordinates(const AlgebraElement& a) const;
    AlgebraElement element(const Eigen::VectorXd& v) const;
    AlgebraElement basis_element(int k) const;

private:
    BlockShape shape_;
    bool include_trace_;
    int dim_;
};

/// Dense matrix of a self-adjoint operator in the orthonormal basis (the
/// traceless basis by default; that is the setting of the Delta_N spectrum
/// law and the exact operator norm). Guarded to Σ(n_i²−1) <= 4000.
Eigen::MatrixXd assemble_operator_matrix(const LinearOperator& op, bool include_trace = false);

/// Ground-truth solver: exact Newton on the coordinate form of the residual,
/// with the analytic Jacobian assembled column by column from jacobian_apply
/// and verified against central finite differences at the starting point.
/// Independent of the iterative solvers' update maps. Guarded to desk scale
/// (Σ(n_i²−1) <= 200); throws on Newton stagnation past 50 steps.
AlgebraElement oracle_solve(const AlgebraElement& y, const LinearOperator& op, double h,
                            double tol = 1e-12);

}  // namespace isocubic
