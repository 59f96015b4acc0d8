#include "isocubic/oracle.hpp"

#include <cmath>

namespace isocubic {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

VectorizedProblem::VectorizedProblem(const BlockShape& shape, bool include_trace)
    : shape_(shape), include_trace_(include_trace) {
    dim_ = include_trace ? shape.ambient_dimension() : shape.traceless_dimension();
}

Eigen::VectorXd VectorizedProblem::coordinates(const AlgebraElement& a) const {
    if (a.shape() != shape_) throw ShapeMismatchError("VectorizedProblem: shape mismatch");
    Eigen::VectorXd v(dim_);
    int idx = 0;
    for (int b = 0; b < shape_.block_count(); ++b) {
        const Matrix& m = a.block(b);
        const int n = shape_.size(b);
        for (int j = 0; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                v[idx++] = kInvSqrt2 * (m(j, k).imag() + m(k, j).imag());
                v[idx++] = kInvSqrt2 * (m(j, k).real() - m(k, j).real());
            }
        }
        for (int l = 1; l < n; ++l) {
            // i * diag(1,...,1,-l,0,...)/sqrt(l(l+1)) with l leading ones.
            const double s = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
            double acc = 0.0;
            for (int p = 0; p < l; ++p) acc += m(p, p).imag();
            acc -= static_cast<double>(l) * m(l, l).imag();
            v[idx++] = s * acc;
        }
        if (include_trace_) {
            double acc = 0.0;
            for (int p = 0; p < n; ++p) acc += m(p, p).imag();
            v[idx++] = acc / std::sqrt(static_cast<double>(n));
        }
    }
    return v;
}

AlgebraElement VectorizedProblem::element(const Eigen::VectorXd& v) const {
    if (v.size() != dim_) throw std::invalid_argument("VectorizedProblem: wrong coordinate size");
    const Complex iu(0.0, 1.0);
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(shape_.block_count()));
    int idx = 0;
    for (int b = 0; b < shape_.block_count(); ++b) {
        const int n = shape_.size(b);
        Matrix m = Matrix::Zero(n, n);
        for (int j = 0; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                const double cs = v[idx++];
                const double ca = v[idx++];
                m(j, k) += iu * (kInvSqrt2 * cs) + kInvSqrt2 * ca;
                m(k, j) += iu * (kInvSqrt2 * cs) - kInvSqrt2 * ca;
            }
        }
        for (int l = 1; l < n; ++l) {
            const double s = v[idx++] / std::sqrt(static_cast<double>(l) * (l + 1));
            for (int p = 0; p < l; ++p) m(p, p) += iu * s;
            m(l, l) -= iu * (static_cast<double>(l) * s);
        }
        if (include_trace_) {
            const double s = v[idx++] / std::sqrt(static_cast<double>(n));
            for (int p = 0; p < n; ++p) m(p, p) += iu * s;
        }
        blocks.push_back(std::move(m));
    }
    return AlgebraElement::from_blocks(std::move(blocks));
}

AlgebraElement VectorizedProblem::basis_element(int k) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim_);
    v[k] = 1.0;
    return element(v);
}

Eigen::MatrixXd assemble_operator_matrix(const LinearOperator& op, bool include_trace) {
    if (op.shape().traceless_dimension() > 4000) {
        throw std::invalid_argument("assemble_operator_matrix: dimension guard exceeded");
    }
    VectorizedProblem vp(op.shape(), include_trace);
    const int d = vp.dimension();
    Eigen::MatrixXd m(d, d);
    for (int j = 0; j < d; ++j) {
        m.col(j) = vp.coordinates(op.apply(vp.basis_element(j)));
    }
    return m;
}

AlgebraElement oracle_solve(const AlgebraElement& y, const LinearOperator& op, double h,
                            double tol) {
    if (y.shape().traceless_dimension() > 200) {
        throw std::invalid_argument("oracle_solve: dimension guard exceeded");
    }
    if (y.shape() != op.shape()) throw ShapeMismatchError("oracle_solve: shape mismatch");

    // The cubic equation's solution picks up an O(h^2) trace component even
    // for traceless Y, so the coordinates must span the full skew-Hermitian
    // space, trace directions included.
    VectorizedProblem vp(y.shape(), /*include_trace=*/true);
    const int d = vp.dimension();

    const auto f_of = [&](const Eigen::VectorXd& v) {
        return vp.coordinates(residual(vp.element(v), y, op, h));
    };

    Eigen::VectorXd xv = vp.coordinates(y);
    for (int it = 0; it < 50; ++it) {
        const Eigen::VectorXd fv = f_of(xv);
        if (fv.norm() <= tol) return vp.element(xv);

        const AlgebraElement x = vp.element(xv);
        Eigen::MatrixXd jac(d, d);
        for (int j = 0; j < d; ++j) {
            jac.col(j) = vp.coordinates(jacobian_apply(x, vp.basis_element(j), op, h));
        }

        if (it == 0) {
            // Independent sanity check of the analytic Jacobian against
            // central finite differences of the residual map.
            const double eps = 1e-6;
            double worst = 0.0;
            Eigen::VectorXd probe = xv;
            for (int j = 0; j < d; ++j) {
                probe[j] = xv[j] + eps;
                const Eigen::VectorXd fp = f_of(probe);
                probe[j] = xv[j] - eps;
                const Eigen::VectorXd fm = f_of(probe);
                probe[j] = xv[j];
                worst = std::max(worst, ((fp - fm) / (2.0 * eps) - jac.col(j)).norm());
            }
            if (worst > 1e-7 * std::max(1.0, jac.norm())) {
                throw std::runtime_error("oracle_solve: Jacobian disagrees with finite differences");
            }
        }

        xv -= jac.partialPivLu().solve(fv);
    }
    if (f_of(xv).norm() <= tol) return vp.element(xv);
    throw std::runtime_error("oracle_solve: Newton did not converge in 50 steps");
}

}  // namespace isocubic
