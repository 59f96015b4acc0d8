#include "isocubic/riccati.hpp"

#include <cmath>

namespace isocubic {

Matrix su2_to_matrix(const Su2Vector& v) {
    const Complex iu(0.0, 1.0);
    Matrix m(2, 2);
    m(0, 0) = -0.5 * iu * v[2];
    m(0, 1) = -0.5 * (v[1] + iu * v[0]);
    m(1, 0) = 0.5 * (v[1] - iu * v[0]);
    m(1, 1) = 0.5 * iu * v[2];
    return m;
}

Su2Vector su2_from_matrix(const Matrix& m) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw std::invalid_argument("su2_from_matrix: need a 2x2 matrix");
    }
    const double scale = std::max(m.norm(), 1e-300);
    if ((m + m.adjoint()).norm() > 1e-10 * scale || std::abs(m.trace()) > 1e-10 * scale) {
        throw std::invalid_argument("su2_from_matrix: input is not traceless skew-Hermitian");
    }
    Su2Vector v;
    v[0] = -2.0 * m(1, 0).imag();
    v[1] = 2.0 * m(1, 0).real();
    v[2] = -2.0 * m(0, 0).imag();
    return v;
}

AlgebraElement su2_element(const Su2Vector& v) {
    return AlgebraElement::from_blocks({su2_to_matrix(v)});
}

AlgebraElement care_residual(const AlgebraElement& p, const AlgebraElement& x,
                             const AlgebraElement& y, double h) {
    if (p.shape() != x.shape() || x.shape() != y.shape()) {
        throw ShapeMismatchError("care_residual: shape mismatch");
    }
    std::vector<Matrix> blocks;
    blocks.reserve(p.blocks().size());
    for (int i = 0; i < p.block_count(); ++i) {
        blocks.push_back((h * h) * p.block(i) * x.block(i) * p.block(i) +
                         h * (p.block(i) * x.block(i) - x.block(i) * p.block(i)) +
                         y.block(i) - x.block(i));
    }
    return AlgebraElement::from_blocks(std::move(blocks));
}

Su2Vector su2_care_forward(const Su2Vector& x, const Su2Vector& p, double h) {
    return x - h * p.cross(x) -
           (h * h / 4.0) * (p.squaredNorm() * x - 2.0 * p.dot(x) * p);
}

RiccatiBranches solve_su2_branches(const Su2Vector& x, const Su2Vector& y, double h) {
    const double r = x.norm();
    if (!(r > 0.0)) throw std::invalid_argument("solve_su2_branches: x must be nonzero");
    if (!(h > 0.0)) throw std::invalid_argument("solve_su2_branches: h must be positive");

    const Su2Vector xhat = x / r;
    const double kappa = x.dot(y) / (r * r);
    const Su2Vector y_perp = y - kappa * x;
    const double a0 = y_perp.squaredNorm();

    const double b = h * h * h * h * r * r / 4.0;
    const double c = h * h * r * r;
    const double d = 4.0 * (kappa - 1.0) / (h * h);

    // b t^2 + (c - d b) t - (a0 + d c) = 0 in t = beta^2; the roots have
    // product -(a0 + d c)/b, so a nonnegative root exists iff a0 + d c >= 0,
    // i.e. ||y_perp||^2 + 4 (kappa - 1) ||x||^2 >= 0.
    const double constant = a0 + d * c;
    const double scale = std::max({a0, std::abs(d) * c, c});
    if (constant < -1e-12 * std::max(scale, 1e-300)) {
        throw NoRealSolutionError("no real solution branch: ||y_perp||^2 + 4(kappa-1)||x||^2 < 0");
    }
    const double lin = c - d * b;
    const double disc = lin * lin + 4.0 * b * std::max(constant, 0.0);
    const double t = std::max(0.0, (-lin + std::sqrt(disc)) / (2.0 * b));
    const double beta = std::sqrt(t);

    RiccatiBranches out;
    out.p_parallel_plus = beta * xhat;
    out.p_parallel_minus = -beta * xhat;

    const double a = h * h * beta * r / 2.0;
    const double denom = a * a + h * h * r * r;
    out.p_perp_plus = (a * y_perp + h * y_perp.cross(x)) / denom;
    out.p_perp_minus = (-a * y_perp + h * y_perp.cross(x)) / denom;

    const AlgebraElement xe = su2_element(x);
    const AlgebraElement ye = su2_element(y);
    out.residual_plus = frobenius_norm(care_residual(su2_element(out.branch_plus()), xe, ye, h));
    out.residual_minus = frobenius_norm(care_residual(su2_element(out.branch_minus()), xe, ye, h));

    const double pscale = std::max({out.branch_plus().norm(), out.branch_minus().norm(), 1.0});
    out.distinct = (out.branch_plus() - out.branch_minus()).norm() > 1e-9 * pscale;
    return out;
}

}  // namespace isocubic
