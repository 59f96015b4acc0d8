#pragma once

#include "isocubic/algebra.hpp"

#include <array>
#include <vector>

namespace isocubic {

/// LDL^T factorization of a symmetric positive definite tridiagonal matrix,
/// solved by the Thomas recurrence.
class TridiagLDL {
public:
    TridiagLDL() = default;
    /// diag has length L, off length L-1 (entry (i, i+1)).
    TridiagLDL(const std::vector<double>& diag, const std::vector<double>& off);
    int size() const { return static_cast<int>(d_.size()); }
    void solve_inplace(Eigen::VectorXcd& b) const;

private:
    std::vector<double> d_;  // pivots
    std::vector<double> l_;  // subdiagonal multipliers
};

/// Quantized Laplacian Delta_N on N x N matrices:
///
///     Delta_N W = sum_a [X_a, [X_a, W]],
///
/// where X_a = -i J_a are the skew-Hermitian generators of the
/// N-dimensional irreducible su(2) representation, normalized so that
/// [X_1, X_2] = X_3 cyclically. On the traceless part the spectrum is
/// -l(l+1) with multiplicity 2l+1 for l = 1..N-1; the identity spans the
/// kernel.
///
/// In the J_3 eigenbasis the operator preserves every matrix diagonal and
/// acts on diagonal m as m^2 plus a symmetric tridiagonal coupling, so both
/// apply and solve cost O(N^2).
class QuantizedLaplacian {
public:
    explicit QuantizedLaplacian(int n);

    int n() const { return n_; }

    /// Delta_N W.
    Matrix apply(const Matrix& w) const;

    /// Solve Delta_N P = W. The main-diagonal system is solved in the
    /// complement of the identity kernel; the caller is responsible for W
    /// being (numerically) traceless and receives a traceless P.
    Matrix solve(const Matrix& w) const;

    /// Tridiagonal coefficients of the action on diagonal |m| (testing hook).
    void diagonal_operator(int m, std::vector<double>& diag, std::vector<double>& off) const;

    /// Prefactored solver for (Delta_N - shift) P = W with shift > 0, which
    /// is negative definite on all of u(N) (no kernel handling needed).
    class ShiftedInverse {
    public:
        ShiftedInverse(const QuantizedLaplacian& lap, double shift);
        Matrix solve(const Matrix& w) const;

    private:
        int n_;
        std::vector<TridiagLDL> fact_;  // index |m|
    };

    /// Dense generators {X_1, X_2, X_3} (testing hook and model input).
    static std::array<Matrix, 3> su2_generators(int n);

private:
    int n_;
    std::vector<double> c_;                     // ladder coefficients, c_k = sqrt((k+1)(N-1-k))
    std::vector<std::vector<double>> diag_;     // per |m| tridiagonal diagonal
    std::vector<std::vector<double>> off_;      // per |m| tridiagonal off-diagonal
    std::vector<TridiagLDL> neg_fact_;          // m >= 1: LDL of -T_m; m == 0: leading principal
};

}  // namespace isocubic
