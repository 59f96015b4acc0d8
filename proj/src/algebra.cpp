#include "isocubic/algebra.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace isocubic {

namespace {

void require_same_shape(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.shape() != b.shape()) {
        throw ShapeMismatchError("block shapes differ");
    }
}

// Solve M^* X = B from the factors of M = P^{-1} L U, i.e. M^* = U^* L^* P.
Matrix adjoint_solve(const Eigen::PartialPivLU<Matrix>& lu, const Matrix& b) {
    Matrix w = lu.matrixLU().triangularView<Eigen::Upper>().adjoint().solve(b);
    lu.matrixLU().triangularView<Eigen::UnitLower>().adjoint().solveInPlace(w);
    return lu.permutationP().transpose() * w;
}

}  // namespace

SingularBlockError::SingularBlockError(int block)
    : std::runtime_error("singular factor in block " + std::to_string(block)),
      block_index(block) {}

BlockShape::BlockShape(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) {
        throw std::invalid_argument("BlockShape needs at least one block");
    }
    for (int n : sizes_) {
        if (n < 1) {
            throw std::invalid_argument("block sizes must be positive");
        }
    }
}

BlockShape BlockShape::single(int n) { return BlockShape(std::vector<int>{n}); }

BlockShape BlockShape::uniform(int blocks, int n) {
    return BlockShape(std::vector<int>(static_cast<std::size_t>(blocks), n));
}

int BlockShape::ambient_dimension() const {
    int d = 0;
    for (int n : sizes_) d += n * n;
    return d;
}

int BlockShape::traceless_dimension() const {
    int d = 0;
    for (int n : sizes_) d += n * n - 1;
    return d;
}

AlgebraElement::AlgebraElement(const BlockShape& shape) : shape_(shape) {
    blocks_.reserve(static_cast<std::size_t>(shape.block_count()));
    for (int i = 0; i < shape.block_count(); ++i) {
        blocks_.push_back(Matrix::Zero(shape.size(i), shape.size(i)));
    }
}

AlgebraElement AlgebraElement::from_blocks(std::vector<Matrix> blocks) {
    std::vector<int> sizes;
    sizes.reserve(blocks.size());
    for (const Matrix& m : blocks) {
        if (m.rows() != m.cols()) {
            throw std::invalid_argument("blocks must be square");
        }
        sizes.push_back(static_cast<int>(m.rows()));
    }
    AlgebraElement e;
    e.shape_ = BlockShape(std::move(sizes));
    e.blocks_ = std::move(blocks);
    return e;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    require_same_shape(*this, o);
    AlgebraElement r = *this;
    for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] += o.blocks_[i];
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    require_same_shape(*this, o);
    AlgebraElement r = *this;
    for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] -= o.blocks_[i];
    return r;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement r = *this;
    for (Matrix& m : r.blocks_) m = -m;
    return r;
}

AlgebraElement AlgebraElement::operator*(double s) const {
    AlgebraElement r = *this;
    for (Matrix& m : r.blocks_) m *= s;
    return r;
}

AlgebraElement identity_element(const BlockShape& shape) {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(shape.block_count()));
    for (int i = 0; i < shape.block_count(); ++i) {
        blocks.push_back(Matrix::Identity(shape.size(i), shape.size(i)));
    }
    return AlgebraElement::from_blocks(std::move(blocks));
}

AlgebraElement project_skew(const AlgebraElement& a) {
    std::vector<Matrix> blocks;
    blocks.reserve(a.blocks().size());
    for (const Matrix& m : a.blocks()) {
        blocks.push_back(0.5 * (m - m.adjoint().eval()));
    }
    return AlgebraElement::from_blocks(std::move(blocks));
}

AlgebraElement project_traceless(const AlgebraElement& a) {
    std::vector<Matrix> blocks;
    blocks.reserve(a.blocks().size());
    for (const Matrix& m : a.blocks()) {
        const auto n = m.rows();
        Matrix b = m;
        b -= (m.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
        blocks.push_back(std::move(b));
    }
    return AlgebraElement::from_blocks(std::move(blocks));
}

double skew_defect(const AlgebraElement& a) {
    double worst = 0.0;
    for (const Matrix& m : a.blocks()) {
        worst = std::max(worst, (m + m.adjoint()).norm());
    }
    return worst;
}

double trace_defect(const AlgebraElement& a) {
    double worst = 0.0;
    for (const Matrix& m : a.blocks()) {
        worst = std::max(worst, std::abs(m.trace()));
    }
    return worst;
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_shape(a, b);
    std::vector<Matrix> blocks;
    blocks.reserve(a.blocks().size());
    for (int i = 0; i < a.block_count(); ++i) {
        blocks.push_back(a.block(i) * b.block(i) - b.block(i) * a.block(i));
    }
    return AlgebraElement::from_blocks(std::move(blocks));
}

AlgebraElement triple_product(const AlgebraElement& p, const AlgebraElement& x, double h) {
    require_same_shape(p, x);
    std::vector<Matrix> blocks;
    blocks.reserve(p.blocks().size());
    for (int i = 0; i < p.block_count(); ++i) {
        const auto n = x.block(i).rows();
        const Matrix minus = Matrix::Identity(n, n) - h * p.block(i);
        const Matrix plus = Matrix::Identity(n, n) + h * p.block(i);
        blocks.push_back(minus * x.block(i) * plus);
    }
    return AlgebraElement::from_blocks(std::move(blocks));
}

double frobenius_inner(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_shape(a, b);
    double s = 0.0;
    for (int i = 0; i < a.block_count(); ++i) {
        s += a.block(i).conjugate().cwiseProduct(b.block(i)).sum().real();
    }
    return s;
}

double frobenius_norm(const AlgebraElement& a) {
    double s = 0.0;
    for (const Matrix& m : a.blocks()) s += m.squaredNorm();
    return std::sqrt(s);
}

LUFactors::LUFactors(const AlgebraElement& p, double h) : shape_(p.shape()) {
    // Relative skew defect decides whether the adjoint identity is usable.
    const double scale = frobenius_norm(p);
    conjugate_pair_ = skew_defect(p) <= 1e-12 * std::max(scale, 1.0);
    lu_minus_.reserve(p.blocks().size());
    for (int i = 0; i < p.block_count(); ++i) {
        const auto n = p.block(i).rows();
        const Matrix minus = Matrix::Identity(n, n) - h * p.block(i);
        lu_minus_.emplace_back(minus);
        const double diag_min = lu_minus_.back().matrixLU().diagonal().cwiseAbs().minCoeff();
        if (!(diag_min > 1e-14 * std::max(1.0, minus.norm()))) {
            throw SingularBlockError(i);
        }
        if (!conjugate_pair_) {
            const Matrix plus = Matrix::Identity(n, n) + h * p.block(i);
            lu_plus_.emplace_back(plus);
            const double dmin = lu_plus_.back().matrixLU().diagonal().cwiseAbs().minCoeff();
            if (!(dmin > 1e-14 * std::max(1.0, plus.norm()))) {
                throw SingularBlockError(i);
            }
        }
    }
}

AlgebraElement LUFactors::solve_minus_left(const AlgebraElement& b) const {
    if (b.shape() != shape_) throw ShapeMismatchError("LUFactors: shape mismatch");
    std::vector<Matrix> blocks;
    blocks.reserve(b.blocks().size());
    for (int i = 0; i < b.block_count(); ++i) {
        blocks.push_back(lu_minus_[static_cast<std::size_t>(i)].solve(b.block(i)));
    }
    return AlgebraElement::from_blocks(std::move(blocks));
}

AlgebraElement LUFactors::solve_plus_left(const AlgebraElement& b) const {
    if (b.shape() != shape_) throw ShapeMismatchError("LUFactors: shape mismatch");
    std::vector<Matrix> blocks;
    blocks.reserve(b.blocks().size());
    for (int i = 0; i < b.block_count(); ++i) {
        if (conjugate_pair_) {
            // (I + hP) = (I - hP)^*, so reuse the stored factors.
            blocks.push_back(adjoint_solve(lu_minus_[static_cast<std::size_t>(i)], b.block(i)));
        } else {
            blocks.push_back(lu_plus_[static_cast<std::size_t>(i)].solve(b.block(i)));
        }
    }
    return AlgebraElement::from_blocks(std::move(blocks));
}

AlgebraElement LUFactors::solve_plus_right(const AlgebraElement& b) const {
    if (b.shape() != shape_) throw ShapeMismatchError("LUFactors: shape mismatch");
    std::vector<Matrix> blocks;
    blocks.reserve(b.blocks().size());
    for (int i = 0; i < b.block_count(); ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        if (conjugate_pair_) {
            // X (I + hP) = B  <=>  X = ((I - hP)^{-1} B^*)^*.
            blocks.push_back(lu_minus_[k].solve(b.block(i).adjoint()).adjoint().eval());
        } else {
            // X = (((I + hP)^*)^{-1} B^*)^*, via an adjoint solve on the plus factors.
            blocks.push_back(adjoint_solve(lu_plus_[k], b.block(i).adjoint()).adjoint().eval());
        }
    }
    return AlgebraElement::from_blocks(std::move(blocks));
}

AlgebraElement LUFactors::reconstruct_minus() const {
    std::vector<Matrix> blocks;
    blocks.reserve(lu_minus_.size());
    for (const auto& lu : lu_minus_) blocks.push_back(lu.reconstructedMatrix());
    return AlgebraElement::from_blocks(std::move(blocks));
}

LUFactors lu_factor(const AlgebraElement& p, double h) { return LUFactors(p, h); }

std::vector<std::vector<double>> hermitian_eigenvalues(const AlgebraElement& a) {
    const double scale = frobenius_norm(a);
    if (skew_defect(a) > 1e-10 * std::max(scale, 1e-300)) {
        throw std::invalid_argument("hermitian_eigenvalues: input is not skew-Hermitian");
    }
    std::vector<std::vector<double>> out;
    out.reserve(a.blocks().size());
    const Complex iu(0.0, 1.0);
    for (const Matrix& m : a.blocks()) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(iu * m);
        if (es.info() != Eigen::Success) {
            throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
        }
        const auto& ev = es.eigenvalues();
        out.emplace_back(ev.data(), ev.data() + ev.size());
    }
    return out;
}

namespace detail {

GaussianStream::GaussianStream(std::uint64_t seed) : engine_(seed) {}

double GaussianStream::uniform01() {
    // 53-bit mantissa draw; identical across platforms for a given seed.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

}  // namespace detail

AlgebraElement random_normalized(const BlockShape& shape, std::uint64_t seed) {
    detail::GaussianStream g(seed);
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(shape.block_count()));
    for (int b = 0; b < shape.block_count(); ++b) {
        const int n = shape.size(b);
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double re = g.next();
                const double im = g.next();
                m(i, j) = Complex(re, im);
            }
        }
        blocks.push_back(std::move(m));
    }
    AlgebraElement e = project_traceless(project_skew(AlgebraElement::from_blocks(std::move(blocks))));
    const double norm = frobenius_norm(e);
    if (norm == 0.0) {
        throw std::runtime_error("random_normalized: degenerate draw");
    }
    return e * (1.0 / norm);
}

}  // namespace isocubic
