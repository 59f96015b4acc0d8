#include "isocubic/solvers.hpp"

#include <cmath>
#include <functional>

namespace isocubic {

namespace {

constexpr double kDivergenceGuard = 1e6;

// Blockwise A X B.
AlgebraElement sandwich(const AlgebraElement& a, const AlgebraElement& x,
                        const AlgebraElement& b) {
    std::vector<Matrix> blocks;
    blocks.reserve(a.blocks().size());
    for (int i = 0; i < a.block_count(); ++i) {
        blocks.push_back(a.block(i) * x.block(i) * b.block(i));
    }
    return AlgebraElement::from_blocks(std::move(blocks));
}

SolveResult iterate(const AlgebraElement& y, const LinearOperator& op, const SolverConfig& cfg,
                    const std::function<AlgebraElement(const AlgebraElement&)>& update) {
    cfg.validate();
    if (y.shape() != op.shape()) throw ShapeMismatchError("solver: Y/operator shape mismatch");
    AlgebraElement x = cfg.initial_guess ? *cfg.initial_guess : y;
    if (x.shape() != y.shape()) throw ShapeMismatchError("solver: initial guess shape mismatch");

    SolverReport rep;
    for (int k = 1; k <= cfg.max_iter; ++k) {
        AlgebraElement next = update(x);
#ifndef NDEBUG
        // Closure: every iterate stays in the quadratic algebra u(N).
        if (skew_defect(next) > 1e-11 * std::max(frobenius_norm(next), 1.0)) {
            throw std::logic_error("solver iterate left the skew-Hermitian algebra");
        }
#endif
        const double err = frobenius_norm(next - x);
        rep.history.push_back(err);
        rep.iterations = k;
        rep.final_step_norm = err;
        x = std::move(next);
        if (!std::isfinite(err) || err > kDivergenceGuard) {
            rep.reason = StopReason::diverged;
            break;
        }
        if (err <= cfg.tol) {
            rep.converged = true;
            rep.reason = StopReason::converged;
            break;
        }
    }
    rep.residual_norm = frobenius_norm(residual(x, y, op, cfg.h));
    return SolveResult{std::move(x), std::move(rep)};
}

}  // namespace

std::string to_string(NewtonVariant v) {
    switch (v) {
        case NewtonVariant::v1: return "v1";
        case NewtonVariant::v2: return "v2";
        case NewtonVariant::v3: return "v3";
        case NewtonVariant::v4: return "v4";
    }
    return "v2";
}

NewtonVariant parse_newton_variant(const std::string& s) {
    if (s == "v1" || s == "1") return NewtonVariant::v1;
    if (s == "v2" || s == "2") return NewtonVariant::v2;
    if (s == "v3" || s == "3") return NewtonVariant::v3;
    if (s == "v4" || s == "4") return NewtonVariant::v4;
    throw std::invalid_argument("unknown newton variant: " + s);
}

std::string to_string(SolverKind k) {
    switch (k) {
        case SolverKind::explicit_fp: return "explicit";
        case SolverKind::linear: return "linear";
        case SolverKind::newton: return "newton";
    }
    return "linear";
}

SolverKind parse_solver_kind(const std::string& s) {
    if (s == "explicit") return SolverKind::explicit_fp;
    if (s == "linear") return SolverKind::linear;
    if (s == "newton") return SolverKind::newton;
    throw std::invalid_argument("unknown solver: " + s);
}

void SolverConfig::validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");
    // Negative h is the time-reversed map and equally well-posed.
    if (!std::isfinite(h)) throw std::invalid_argument("SolverConfig: h must be finite");
    if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be at least 1");
}

AlgebraElement fixed_point_map(const AlgebraElement& x, const AlgebraElement& y,
                               const LinearOperator& op, double h) {
    const AlgebraElement p = op.apply(x);
    return y + h * commutator(p, x) + (h * h) * sandwich(p, x, p);
}

AlgebraElement linear_update(const AlgebraElement& x, const AlgebraElement& y,
                             const LinearOperator& op, double h) {
    const AlgebraElement p = op.apply(x);
    const LUFactors lu(p, h);
    return lu.solve_plus_right(lu.solve_minus_left(y));
}

AlgebraElement residual(const AlgebraElement& x, const AlgebraElement& y,
                        const LinearOperator& op, double h) {
    const AlgebraElement p = op.apply(x);
    return x - h * commutator(p, x) - (h * h) * sandwich(p, x, p) - y;
}

AlgebraElement jacobian_apply(const AlgebraElement& x, const AlgebraElement& z,
                              const LinearOperator& op, double h) {
    const AlgebraElement p = op.apply(x);
    const AlgebraElement lz = op.apply(z);
    const AlgebraElement b1 = commutator(lz, x) + commutator(p, z);
    const AlgebraElement b2 = sandwich(lz, x, p) + sandwich(p, z, p) + sandwich(p, x, lz);
    return z - h * b1 - (h * h) * b2;
}

AlgebraElement newton_correction(const AlgebraElement& x, const AlgebraElement& r,
                                 const LinearOperator& op, double h, NewtonVariant variant) {
    const AlgebraElement p = op.apply(x);
    const auto b1 = [&](const AlgebraElement& z) {
        return commutator(op.apply(z), x) + commutator(p, z);
    };
    const auto b2 = [&](const AlgebraElement& z) {
        const AlgebraElement lz = op.apply(z);
        return sandwich(lz, x, p) + sandwich(p, z, p) + sandwich(p, x, lz);
    };
    const double h2 = h * h;
    switch (variant) {
        case NewtonVariant::v1:
            return r + h * b1(r);
        case NewtonVariant::v2:
            return r + h * b1(r) + h2 * b2(r);
        case NewtonVariant::v3: {
            const AlgebraElement b1r = b1(r);
            return r + h * b1r + h2 * b1(b1r);
        }
        case NewtonVariant::v4: {
            const AlgebraElement b1r = b1(r);
            return r + h * b1r + h2 * (b1(b1r) + b2(r));
        }
    }
    throw std::logic_error("unreachable newton variant");
}

SolveResult solve_explicit(const AlgebraElement& y, const LinearOperator& op,
                           const SolverConfig& cfg) {
    return iterate(y, op, cfg,
                   [&](const AlgebraElement& x) { return fixed_point_map(x, y, op, cfg.h); });
}

SolveResult solve_linear(const AlgebraElement& y, const LinearOperator& op,
                         const SolverConfig& cfg) {
    return iterate(y, op, cfg,
                   [&](const AlgebraElement& x) { return linear_update(x, y, op, cfg.h); });
}

SolveResult solve_newton(const AlgebraElement& y, const LinearOperator& op,
                         const SolverConfig& cfg) {
    return iterate(y, op, cfg, [&](const AlgebraElement& x) {
        const AlgebraElement r = residual(x, y, op, cfg.h);
        return x - newton_correction(x, r, op, cfg.h, cfg.newton_variant);
    });
}

SolveResult solve_with(SolverKind kind, const AlgebraElement& y, const LinearOperator& op,
                       const SolverConfig& cfg) {
    switch (kind) {
        case SolverKind::explicit_fp: return solve_explicit(y, op, cfg);
        case SolverKind::linear: return solve_linear(y, op, cfg);
        case SolverKind::newton: return solve_newton(y, op, cfg);
    }
    throw std::logic_error("unreachable solver kind");
}

double theorem_h_bound(const AlgebraElement& y, const LinearOperator& op) {
    const double ny = frobenius_norm(y);
    if (ny == 0.0) {
        throw std::invalid_argument("theorem_h_bound: undefined for Y = 0");
    }
    const double nl = operator_norm(op);
    if (nl == 0.0) {
        throw std::invalid_argument("theorem_h_bound: operator norm estimate is zero");
    }
    return 1.0 / (3.0 * nl * ny);
}

}  // namespace isocubic
