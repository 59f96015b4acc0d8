#include "isocubic/operators.hpp"

#include <cmath>

namespace isocubic {

namespace {

Matrix drop_trace(const Matrix& m) {
    const auto n = m.rows();
    return m - (m.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
}

}  // namespace

ScaledIdentityOperator::ScaledIdentityOperator(BlockShape shape, double factor)
    : shape_(std::move(shape)), factor_(factor) {}

AlgebraElement ScaledIdentityOperator::apply(const AlgebraElement& a) const {
    if (a.shape() != shape_) throw ShapeMismatchError("ScaledIdentityOperator: shape mismatch");
    return a * factor_;
}

std::string ScaledIdentityOperator::label() const {
    return "identity*" + std::to_string(factor_);
}

EulerSphereOperator::EulerSphereOperator(int n) : shape_(BlockShape::single(n)), lap_(n) {}

AlgebraElement EulerSphereOperator::apply(const AlgebraElement& w) const {
    if (w.shape() != shape_) throw ShapeMismatchError("EulerSphereOperator: shape mismatch");
    return AlgebraElement::from_blocks({lap_.solve(drop_trace(w.block(0)))});
}

AlgebraElement EulerSphereOperator::laplacian_apply(const AlgebraElement& w) const {
    if (w.shape() != shape_) throw ShapeMismatchError("EulerSphereOperator: shape mismatch");
    return AlgebraElement::from_blocks({lap_.apply(w.block(0))});
}

AlgebraElement EulerSphereOperator::laplacian_solve(const AlgebraElement& w) const {
    if (w.shape() != shape_) throw ShapeMismatchError("EulerSphereOperator: shape mismatch");
    const double scale = frobenius_norm(w);
    if (trace_defect(w) > 1e-10 * std::max(scale, 1e-300)) {
        throw std::invalid_argument(
            "euler_laplacian_solve: input has a kernel (trace) component");
    }
    return AlgebraElement::from_blocks({lap_.solve(drop_trace(w.block(0)))});
}

namespace {

double inverse_square_shift(double lambda) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("DriftAlfvenOperator: lambda must be positive");
    }
    return 1.0 / (lambda * lambda);
}

}  // namespace

DriftAlfvenOperator::DriftAlfvenOperator(int n, double lambda)
    : shape_(BlockShape::uniform(2, n)),
      lap_(n),
      shifted_(lap_, inverse_square_shift(lambda)),
      lambda_(lambda) {}

AlgebraElement DriftAlfvenOperator::apply(const AlgebraElement& w) const {
    if (w.shape() != shape_) throw ShapeMismatchError("DriftAlfvenOperator: shape mismatch");
    const Matrix& wp = w.block(0);
    const Matrix& wm = w.block(1);
    const Matrix f = lap_.solve(drop_trace(wp + wm));
    const Matrix p = shifted_.solve((1.0 / lambda_) * (wp - wm));
    return AlgebraElement::from_blocks({f + (1.0 / lambda_) * p, f - (1.0 / lambda_) * p});
}

SpinChainOperator::SpinChainOperator(int particles, double dx)
    : shape_(BlockShape::uniform(particles, 2)), dx_(dx), inv_dx2_(1.0 / (dx * dx)) {
    if (particles < 3) {
        throw std::invalid_argument("SpinChainOperator: need at least 3 particles");
    }
    if (!(dx > 0.0)) {
        throw std::invalid_argument("SpinChainOperator: dx must be positive");
    }
}

AlgebraElement SpinChainOperator::apply(const AlgebraElement& s) const {
    if (s.shape() != shape_) throw ShapeMismatchError("SpinChainOperator: shape mismatch");
    const int n = shape_.block_count();
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int prev = (i + n - 1) % n;
        const int next = (i + 1) % n;
        blocks.push_back(inv_dx2_ * (s.block(prev) + s.block(next)));
    }
    return AlgebraElement::from_blocks(std::move(blocks));
}

double operator_norm(const LinearOperator& op, std::uint64_t seed, int iters) {
    AlgebraElement z = random_normalized(op.shape(), seed);
    double est = 0.0;
    for (int k = 0; k < iters; ++k) {
        AlgebraElement w = op.apply(z);
        const double nu = frobenius_norm(w);
        if (nu == 0.0) return 0.0;
        const double prev = est;
        est = nu;
        z = w * (1.0 / nu);
        if (k > 0 && std::abs(est - prev) <= 1e-10 * std::max(est, 1e-300)) break;
    }
    return est;
}

}  // namespace isocubic
