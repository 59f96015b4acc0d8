#pragma once

#include "isocubic/algebra.hpp"
#include "isocubic/quantized_laplacian.hpp"

#include <memory>
#include <string>

namespace isocubic {

/// A linear, self-adjoint map on a block algebra. Operators are immutable
/// after construction (factorizations are built eagerly) and apply() is pure,
/// so instances may be shared across threads.
class LinearOperator {
public:
    virtual ~LinearOperator() = default;
    virtual const BlockShape& shape() const = 0;
    virtual AlgebraElement apply(const AlgebraElement& a) const = 0;
    virtual std::string label() const = 0;
};

/// s * identity; s = 0 gives the zero operator. Testing utility.
class ScaledIdentityOperator final : public LinearOperator {
public:
    ScaledIdentityOperator(BlockShape shape, double factor);
    const BlockShape& shape() const override { return shape_; }
    AlgebraElement apply(const AlgebraElement& a) const override;
    std::string label() const override;

private:
    BlockShape shape_;
    double factor_;
};

/// 2D Euler on the sphere: L W = Delta_N^{-1} W on a single su(N) block.
/// The per-block trace direction spans the kernel of Delta_N and is
/// projected out before inverting, making apply() self-adjoint on u(N).
class EulerSphereOperator final : public LinearOperator {
public:
    explicit EulerSphereOperator(int n);
    const BlockShape& shape() const override { return shape_; }
    AlgebraElement apply(const AlgebraElement& w) const override;
    std::string label() const override { return "euler"; }

    /// Delta_N W.
    AlgebraElement laplacian_apply(const AlgebraElement& w) const;
    /// Delta_N^{-1} W; rejects input with a trace (kernel) component.
    AlgebraElement laplacian_solve(const AlgebraElement& w) const;

    int n() const { return lap_.n(); }
    const QuantizedLaplacian& laplacian() const { return lap_; }

private:
    BlockShape shape_;
    QuantizedLaplacian lap_;
};

/// Drift-Alfven plasma operator on su(N) + su(N):
///
///   L(W+, W-) = (F + P/lambda, F - P/lambda),
///   Delta_N F = W+ + W-,   (Delta_N - 1/lambda^2) P = (W+ - W-)/lambda.
class DriftAlfvenOperator final : public LinearOperator {
public:
    DriftAlfvenOperator(int n, double lambda);
    const BlockShape& shape() const override { return shape_; }
    AlgebraElement apply(const AlgebraElement& w) const override;
    std::string label() const override { return "alfven"; }

    int n() const { return lap_.n(); }
    double lambda() const { return lambda_; }

private:
    BlockShape shape_;
    QuantizedLaplacian lap_;
    QuantizedLaplacian::ShiftedInverse shifted_;
    double lambda_;
};

/// Heisenberg spin chain coupling on su(2)^N with periodic neighbors:
/// block i of L(S_1..S_N) is (S_{i-1} + S_{i+1}) / dx^2.
class SpinChainOperator final : public LinearOperator {
public:
    explicit SpinChainOperator(int particles, double dx = 1.0);
    const BlockShape& shape() const override { return shape_; }
    AlgebraElement apply(const AlgebraElement& s) const override;
    std::string label() const override { return "chain"; }

    int particles() const { return shape_.block_count(); }
    double dx() const { return dx_; }

private:
    BlockShape shape_;
    double dx_;
    double inv_dx2_;
};

/// Estimate of the operator norm induced by the Frobenius norm, by power
/// iteration started from random_normalized(shape, seed). The returned value
/// is ||L z_k|| / ||z_k|| after at most `iters` iterations (early exit once
/// the estimate changes by less than 1e-10 relative), i.e. the square root
/// of the Rayleigh quotient of L^2 - which converges to the spectral radius
/// for self-adjoint L even when +rho and -rho are both eigenvalues.
double operator_norm(const LinearOperator& op, std::uint64_t seed = 0, int iters = 200);

}  // namespace isocubic
