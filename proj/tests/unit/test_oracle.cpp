#include "isocubic/bench.hpp"
#include "isocubic/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace isocubic;

TEST_SUITE("oracle") {

TEST_CASE("basis orthonormality and round trip") {
    for (bool trace : {false, true}) {
        const BlockShape shape({3, 2});
        const VectorizedProblem vp(shape, trace);
        const int d = vp.dimension();
        CHECK(d == (trace ? shape.ambient_dimension() : shape.traceless_dimension()));

        for (int i = 0; i < d; ++i) {
            const AlgebraElement ei = vp.basis_element(i);
            CHECK(skew_defect(ei) <= 1e-14);
            if (!trace) CHECK(trace_defect(ei) <= 1e-14);
            for (int j = i; j < d; ++j) {
                const double g = frobenius_inner(ei, vp.basis_element(j));
                CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) <= 1e-12);
            }
        }

        const AlgebraElement a = random_normalized(shape, 7);
        CHECK(frobenius_norm(vp.element(vp.coordinates(a)) - a) <= 1e-13);
    }
}

TEST_CASE("operator matrix of the identity") {
    const BlockShape shape({3});
    const ScaledIdentityOperator ident(shape, 1.0);
    const Eigen::MatrixXd m = assemble_operator_matrix(ident);
    CHECK((m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).norm() <= 1e-13);
}

TEST_CASE("operator matrix symmetry for self-adjoint operators") {
    EulerSphereOperator op(5);
    const Eigen::MatrixXd m = assemble_operator_matrix(op);
    CHECK((m - m.transpose()).norm() <= 1e-10);
}

TEST_CASE("dimension guards") {
    struct Big final : LinearOperator {
        BlockShape s = BlockShape::single(80);
        const BlockShape& shape() const override { return s; }
        AlgebraElement apply(const AlgebraElement& a) const override { return a; }
        std::string label() const override { return "big"; }
    } big;
    CHECK_THROWS_AS(assemble_operator_matrix(big), std::invalid_argument);
    CHECK_THROWS_AS(oracle_solve(AlgebraElement(big.s), big, 0.1), std::invalid_argument);
}

TEST_CASE("dense-assembled laplacian solve agrees with the tridiagonal route") {
    struct LaplacianOperator final : LinearOperator {
        explicit LaplacianOperator(int n) : inner(n) {}
        EulerSphereOperator inner;
        const BlockShape& shape() const override { return inner.shape(); }
        AlgebraElement apply(const AlgebraElement& a) const override {
            return inner.laplacian_apply(a);
        }
        std::string label() const override { return "delta"; }
    };
    for (int n : {5, 9}) {
        LaplacianOperator op(n);
        const VectorizedProblem vp(op.shape(), /*include_trace=*/false);
        const Eigen::MatrixXd m = assemble_operator_matrix(op, false);
        // -Delta_N is positive definite on the traceless part.
        const Eigen::LLT<Eigen::MatrixXd> chol((-m).eval());
        REQUIRE(chol.info() == Eigen::Success);
        const AlgebraElement w = random_normalized(op.shape(), 200 + static_cast<std::uint64_t>(n));
        const Eigen::VectorXd coords = -chol.solve(vp.coordinates(w));
        const AlgebraElement dense = vp.element(coords);
        const AlgebraElement fast = op.inner.laplacian_solve(w);
        CHECK(frobenius_norm(dense - fast) <= 1e-10);
    }
}

TEST_CASE("oracle at h=0 returns Y") {
    EulerSphereOperator op(4);
    const AlgebraElement y = random_normalized(op.shape(), 3);
    CHECK(frobenius_norm(oracle_solve(y, op, 0.0) - y) <= 1e-13);
}

TEST_CASE("oracle cross-validates the iterative solvers") {
    SolverConfig cfg;
    cfg.h = 0.3;
    int checked = 0;
    for (std::uint64_t seed = 100; seed < 105; ++seed) {
        for (int n : {3, 5}) {
            EulerSphereOperator op(n);
            const AlgebraElement y = random_normalized(op.shape(), seed);
            const AlgebraElement xo = oracle_solve(y, op, cfg.h);
            CHECK(frobenius_norm(residual(xo, y, op, cfg.h)) <= 1e-11);
            const SolveResult rl = solve_linear(y, op, cfg);
            const SolveResult rn = solve_newton(y, op, cfg);
            REQUIRE(rl.report.converged);
            REQUIRE(rn.report.converged);
            CHECK(frobenius_norm(rl.x - xo) <= 1e-9);
            CHECK(frobenius_norm(rn.x - xo) <= 1e-9);
            ++checked;
        }
    }
    CHECK(checked == 10);

    // Also on the product algebra.
    SpinChainOperator chain(6);
    const AlgebraElement y = random_spin_chain(6, 9);
    const AlgebraElement xo = oracle_solve(y, chain, cfg.h);
    const SolveResult rl = solve_linear(y, chain, cfg);
    REQUIRE(rl.report.converged);
    CHECK(frobenius_norm(rl.x - xo) <= 1e-9);
}

}  // TEST_SUITE
