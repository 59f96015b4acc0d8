#include "isocubic/quantized_laplacian.hpp"

#include <cmath>

namespace isocubic {

TridiagLDL::TridiagLDL(const std::vector<double>& diag, const std::vector<double>& off) {
    const std::size_t L = diag.size();
    d_.resize(L);
    l_.assign(L, 0.0);
    d_[0] = diag[0];
    for (std::size_t i = 1; i < L; ++i) {
        l_[i] = off[i - 1] / d_[i - 1];
        d_[i] = diag[i] - l_[i] * off[i - 1];
    }
}

void TridiagLDL::solve_inplace(Eigen::VectorXcd& b) const {
    const std::size_t L = d_.size();
    for (std::size_t i = 1; i < L; ++i) b[static_cast<Eigen::Index>(i)] -= l_[i] * b[static_cast<Eigen::Index>(i - 1)];
    for (std::size_t i = 0; i < L; ++i) b[static_cast<Eigen::Index>(i)] /= d_[i];
    for (std::size_t i = L - 1; i-- > 0;) b[static_cast<Eigen::Index>(i)] -= l_[i + 1] * b[static_cast<Eigen::Index>(i + 1)];
}

namespace {

// c_k with out-of-range indices treated as 0.
inline double csq(const std::vector<double>& c, int k) {
    if (k < 0 || k >= static_cast<int>(c.size())) return 0.0;
    return c[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(k)];
}

inline double cat(const std::vector<double>& c, int k) {
    if (k < 0 || k >= static_cast<int>(c.size())) return 0.0;
    return c[static_cast<std::size_t>(k)];
}

}  // namespace

QuantizedLaplacian::QuantizedLaplacian(int n) : n_(n) {
    if (n < 2) {
        throw std::invalid_argument("QuantizedLaplacian: n must be at least 2");
    }
    c_.resize(static_cast<std::size_t>(n - 1));
    for (int k = 0; k < n - 1; ++k) {
        c_[static_cast<std::size_t>(k)] = std::sqrt(static_cast<double>(k + 1) * static_cast<double>(n - 1 - k));
    }
    diag_.resize(static_cast<std::size_t>(n));
    off_.resize(static_cast<std::size_t>(n));
    neg_fact_.resize(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        const int L = n - m;
        auto& D = diag_[static_cast<std::size_t>(m)];
        auto& E = off_[static_cast<std::size_t>(m)];
        D.resize(static_cast<std::size_t>(L));
        E.resize(static_cast<std::size_t>(L > 0 ? L - 1 : 0));
        for (int i = 0; i < L; ++i) {
            D[static_cast<std::size_t>(i)] =
                -static_cast<double>(m) * m -
                0.5 * (csq(c_, i - 1) + csq(c_, i) + csq(c_, i + m - 1) + csq(c_, i + m));
        }
        for (int i = 0; i + 1 < L; ++i) {
            E[static_cast<std::size_t>(i)] = cat(c_, i) * cat(c_, i + m);
        }
        if (m == 0) {
            // T_0 is singular (identity kernel); factor the leading principal
            // (N-1) x (N-1) block of -T_0, which interlacing makes definite.
            if (L > 1) {
                std::vector<double> nd(D.begin(), D.end() - 1);
                std::vector<double> ne(E.begin(), E.size() > 0 ? E.end() - 1 : E.end());
                for (double& v : nd) v = -v;
                for (double& v : ne) v = -v;
                neg_fact_[0] = TridiagLDL(nd, ne);
            }
        } else {
            std::vector<double> nd(D);
            std::vector<double> ne(E);
            for (double& v : nd) v = -v;
            for (double& v : ne) v = -v;
            neg_fact_[static_cast<std::size_t>(m)] = TridiagLDL(nd, ne);
        }
    }
}

Matrix QuantizedLaplacian::apply(const Matrix& w) const {
    if (w.rows() != n_ || w.cols() != n_) {
        throw ShapeMismatchError("QuantizedLaplacian::apply: wrong matrix size");
    }
    Matrix out(n_, n_);
    Eigen::VectorXcd buf(n_), res(n_);
    for (int m = 0; m < n_; ++m) {
        const int L = n_ - m;
        const auto& D = diag_[static_cast<std::size_t>(m)];
        const auto& E = off_[static_cast<std::size_t>(m)];
        for (int lower = 0; lower < (m == 0 ? 1 : 2); ++lower) {
            for (int i = 0; i < L; ++i) {
                buf[i] = lower ? w(i + m, i) : w(i, i + m);
            }
            for (int i = 0; i < L; ++i) {
                Complex v = D[static_cast<std::size_t>(i)] * buf[i];
                if (i > 0) v += E[static_cast<std::size_t>(i - 1)] * buf[i - 1];
                if (i + 1 < L) v += E[static_cast<std::size_t>(i)] * buf[i + 1];
                res[i] = v;
            }
            for (int i = 0; i < L; ++i) {
                if (lower) {
                    out(i + m, i) = res[i];
                } else {
                    out(i, i + m) = res[i];
                }
            }
        }
    }
    return out;
}

Matrix QuantizedLaplacian::solve(const Matrix& w) const {
    if (w.rows() != n_ || w.cols() != n_) {
        throw ShapeMismatchError("QuantizedLaplacian::solve: wrong matrix size");
    }
    Matrix out(n_, n_);
    Eigen::VectorXcd buf(n_);
    for (int m = 0; m < n_; ++m) {
        const int L = n_ - m;
        for (int lower = 0; lower < (m == 0 ? 1 : 2); ++lower) {
            for (int i = 0; i < L; ++i) {
                buf[i] = lower ? w(i + m, i) : w(i, i + m);
            }
            if (m == 0) {
                // Solve the first L-1 rows with the last unknown pinned to 0;
                // for right-hand sides orthogonal to the kernel this solves
                // the full singular system exactly. Re-center afterwards.
                if (L == 1) {
                    out(0, 0) = Complex(0, 0);
                    continue;
                }
                Eigen::VectorXcd head = -buf.head(L - 1);
                neg_fact_[0].solve_inplace(head);
                Eigen::VectorXcd x(L);
                x.head(L - 1) = head;
                x[L - 1] = Complex(0, 0);
                x.array() -= x.sum() / static_cast<double>(L);
                for (int i = 0; i < L; ++i) out(i, i) = x[i];
            } else {
                Eigen::VectorXcd x = -buf.head(L);
                neg_fact_[static_cast<std::size_t>(m)].solve_inplace(x);
                for (int i = 0; i < L; ++i) {
                    if (lower) {
                        out(i + m, i) = x[i];
                    } else {
                        out(i, i + m) = x[i];
                    }
                }
            }
        }
    }
    return out;
}

void QuantizedLaplacian::diagonal_operator(int m, std::vector<double>& diag,
                                           std::vector<double>& off) const {
    const int am = std::abs(m);
    if (am >= n_) throw std::out_of_range("diagonal index");
    diag = diag_[static_cast<std::size_t>(am)];
    off = off_[static_cast<std::size_t>(am)];
}

QuantizedLaplacian::ShiftedInverse::ShiftedInverse(const QuantizedLaplacian& lap, double shift)
    : n_(lap.n_) {
    if (!(shift > 0.0)) {
        throw std::invalid_argument("ShiftedInverse: shift must be positive");
    }
    fact_.resize(static_cast<std::size_t>(n_));
    for (int m = 0; m < n_; ++m) {
        // (Delta - shift) restricted to diagonal m is T_m - shift; factor its
        // negation, which is positive definite.
        std::vector<double> nd(lap.diag_[static_cast<std::size_t>(m)]);
        std::vector<double> ne(lap.off_[static_cast<std::size_t>(m)]);
        for (double& v : nd) v = shift - v;
        for (double& v : ne) v = -v;
        fact_[static_cast<std::size_t>(m)] = TridiagLDL(nd, ne);
    }
}

Matrix QuantizedLaplacian::ShiftedInverse::solve(const Matrix& w) const {
    if (w.rows() != n_ || w.cols() != n_) {
        throw ShapeMismatchError("ShiftedInverse::solve: wrong matrix size");
    }
    Matrix out(n_, n_);
    Eigen::VectorXcd buf(n_);
    for (int m = 0; m < n_; ++m) {
        const int L = n_ - m;
        for (int lower = 0; lower < (m == 0 ? 1 : 2); ++lower) {
            for (int i = 0; i < L; ++i) {
                buf[i] = lower ? w(i + m, i) : w(i, i + m);
            }
            Eigen::VectorXcd x = -buf.head(L);
            fact_[static_cast<std::size_t>(m)].solve_inplace(x);
            for (int i = 0; i < L; ++i) {
                if (lower) {
                    out(i + m, i) = x[i];
                } else {
                    out(i, i + m) = x[i];
                }
            }
        }
    }
    return out;
}

std::array<Matrix, 3> QuantizedLaplacian::su2_generators(int n) {
    const double s = 0.5 * (n - 1);
    Matrix jplus = Matrix::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) {
        jplus(k, k + 1) = std::sqrt(static_cast<double>(k + 1) * static_cast<double>(n - 1 - k));
    }
    const Matrix jminus = jplus.adjoint();
    Matrix j3 = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) j3(k, k) = s - k;
    const Complex iu(0.0, 1.0);
    std::array<Matrix, 3> x;
    x[0] = -iu * 0.5 * (jplus + jminus);
    x[1] = -0.5 * (jplus - jminus);
    x[2] = -iu * j3;
    return x;
}

}  // namespace isocubic
