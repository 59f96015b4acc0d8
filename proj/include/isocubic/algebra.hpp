#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace isocubic {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Thrown when two elements with different block shapes are combined.
struct ShapeMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown by factorizations when a block is numerically singular.
struct SingularBlockError : std::runtime_error {
    explicit SingularBlockError(int block);
    int block_index;
};

/// Block structure of a direct-sum algebra: one square complex matrix per
/// block, sizes (n_1, ..., n_B). Elements are composable iff shapes are equal.
class BlockShape {
public:
    BlockShape() = default;
    explicit BlockShape(std::vector<int> sizes);
    /// Convenience: a single block of size n.
    static BlockShape single(int n);
    /// N blocks, all of size n (spin chains use n = 2).
    static BlockShape uniform(int blocks, int n);

    int block_count() const { return static_cast<int>(sizes_.size()); }
    int size(int i) const { return sizes_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& sizes() const { return sizes_; }
    /// Sum of n_i^2: real dimension of the skew-Hermitian part u(n_1)+...+u(n_B).
    int ambient_dimension() const;
    /// Sum of (n_i^2 - 1): real dimension of the traceless part.
    int traceless_dimension() const;

    bool operator==(const BlockShape& o) const { return sizes_ == o.sizes_; }
    bool operator!=(const BlockShape& o) const { return !(*this == o); }

private:
    std::vector<int> sizes_;
};

/// An element of the block direct-sum matrix algebra. Immutable after
/// construction; all operations below are pure and return new elements.
class AlgebraElement {
public:
    AlgebraElement() = default;
    /// Zero element of the given shape.
    explicit AlgebraElement(const BlockShape& shape);
    /// Takes ownership of the blocks; they must all be square.
    static AlgebraElement from_blocks(std::vector<Matrix> blocks);

    const BlockShape& shape() const { return shape_; }
    int block_count() const { return shape_.block_count(); }
    const Matrix& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
    const std::vector<Matrix>& blocks() const { return blocks_; }

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const;
    AlgebraElement operator*(double s) const;
    friend AlgebraElement operator*(double s, const AlgebraElement& a) { return a * s; }

private:
    BlockShape shape_;
    std::vector<Matrix> blocks_;
};

/// Identity in every block (not traceless; handy in tests and in I +- hP).
AlgebraElement identity_element(const BlockShape& shape);

/// Blockwise skew-Hermitian projection (A - A*)/2.
AlgebraElement project_skew(const AlgebraElement& a);
/// Blockwise traceless projection A - (tr A / n) I.
AlgebraElement project_traceless(const AlgebraElement& a);

/// max_i ||A_i + A_i*||_F, the distance from the skew-Hermitian subspace.
double skew_defect(const AlgebraElement& a);
/// max_i |tr A_i|.
double trace_defect(const AlgebraElement& a);

/// Blockwise commutator AB - BA. Skew-Hermitian and traceless are preserved.
AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);

/// Blockwise (I - hP) X (I + hP).
AlgebraElement triple_product(const AlgebraElement& p, const AlgebraElement& x, double h);

/// Real pairing Re sum_i tr(A_i* B_i); positive definite on skew-Hermitian
/// elements, so frobenius_norm is a genuine norm.
double frobenius_inner(const AlgebraElement& a, const AlgebraElement& b);
double frobenius_norm(const AlgebraElement& a);

/// Per-block LU factorization of (I - hP) with partial pivoting. When P is
/// skew-Hermitian, (I - hP)* = (I + hP), so the same factors also solve
/// systems with (I + hP) through adjoint solves and exactly one
/// factorization per block is computed.
class LUFactors {
public:
    LUFactors(const AlgebraElement& p, double h);

    bool conjugate_pair() const { return conjugate_pair_; }

    /// Solve (I - hP) X = B blockwise.
    AlgebraElement solve_minus_left(const AlgebraElement& b) const;
    /// Solve (I + hP) X = B blockwise.
    AlgebraElement solve_plus_left(const AlgebraElement& b) const;
    /// Solve X (I + hP) = B blockwise.
    AlgebraElement solve_plus_right(const AlgebraElement& b) const;

    /// Reconstruct (I - hP) from the stored factors (testing hook).
    AlgebraElement reconstruct_minus() const;

private:
    BlockShape shape_;
    std::vector<Eigen::PartialPivLU<Matrix>> lu_minus_;
    std::vector<Eigen::PartialPivLU<Matrix>> lu_plus_;  // only when !conjugate_pair_
    bool conjugate_pair_ = true;
};

/// Shorthand used by the linear scheme and tests.
LUFactors lu_factor(const AlgebraElement& p, double h);

/// Eigenvalues of the Hermitian matrices i*A_i, one ascending list per
/// block. Rejects input whose skew defect exceeds 1e-10 * ||A||.
std::vector<std::vector<double>> hermitian_eigenvalues(const AlgebraElement& a);

/// Deterministic normalized random element: i.i.d. standard-normal entry
/// seeds (mt19937_64 + Box-Muller on 53-bit uniforms), projected skew then
/// traceless, scaled to unit Frobenius norm. Same seed, same bits.
AlgebraElement random_normalized(const BlockShape& shape, std::uint64_t seed);

namespace detail {
/// Standard-normal generator with a fixed, portable draw order.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed);
    double next();

private:
    double uniform01();
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};
}  // namespace detail

}  // namespace isocubic
