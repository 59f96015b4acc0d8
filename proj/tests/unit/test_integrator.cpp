#include "isocubic/bench.hpp"
#include "isocubic/integrator.hpp"

#include <doctest.h>

#include <cmath>

using namespace isocubic;

TEST_SUITE("integrator") {

TEST_CASE("step degenerate cases") {
    EulerSphereOperator op(5);
    const AlgebraElement y = random_normalized(op.shape(), 3);
    SolverConfig scfg;

    const StepResult r0 = step(y, op, 0.0, SolverKind::linear, scfg);
    CHECK(frobenius_norm(r0.y_next - y) <= 1e-14);

    const ScaledIdentityOperator zero(op.shape(), 0.0);
    const StepResult rz = step(y, zero, 0.3, SolverKind::linear, scfg);
    CHECK(frobenius_norm(rz.y_next - y) <= 1e-13);
}

TEST_CASE("a step is reversed by the step with negated h") {
    EulerSphereOperator op(7);
    const AlgebraElement y = random_normalized(op.shape(), 5);
    SolverConfig scfg;
    const double h = 0.2;
    const StepResult fwd = step(y, op, h, SolverKind::newton, scfg);
    const StepResult back = step(fwd.y_next, op, -h, SolverKind::newton, scfg);
    CHECK(frobenius_norm(back.y_next - y) <= 1e-9);
}

TEST_CASE("step failure carries the report") {
    SpinChainOperator op(129);
    SolverConfig scfg;
    try {
        step(random_spin_chain(129, 42), op, 0.5, SolverKind::explicit_fp, scfg, 7);
        FAIL("expected StepFailureError");
    } catch (const StepFailureError& e) {
        CHECK(e.step_index == 7);
        CHECK_FALSE(e.report.converged);
    }
}

TEST_CASE("hamiltonian values") {
    const BlockShape shape({4});
    const AlgebraElement y = random_normalized(shape, 9);
    const ScaledIdentityOperator ident(shape, 1.0);

    CHECK(hamiltonian(AlgebraElement(shape), ident) == 0.0);
    // H(Y) = 1/2 Tr(Y^2) = -1/2 ||Y||^2 for skew-Hermitian Y under L = I.
    CHECK(hamiltonian(y, ident) ==
          doctest::Approx(-0.5 * frobenius_norm(y) * frobenius_norm(y)).epsilon(1e-12));
}

TEST_CASE("spin chain hamiltonian closed form") {
    const int n = 3;
    const double dx = 1.0;
    SpinChainOperator op(n, dx);
    const AlgebraElement s = random_spin_chain(n, 23);

    // 1/2 sum Tr(S_i (LS)_i) equals sum Tr(S_i S_{i+1}) / dx^2, which is the
    // negative of the sum of Tr(S_i^* S_{i+1}) since S^* = -S.
    double closed = 0.0;
    for (int i = 0; i < n; ++i) {
        closed += (s.block(i).adjoint() * s.block((i + 1) % n)).trace().real();
    }
    closed /= dx * dx;
    CHECK(hamiltonian(s, op) == doctest::Approx(-closed).epsilon(1e-12));

    // Constant chain: H = N Tr(S^2)/dx^2 = 3 Tr(S^2).
    std::vector<Matrix> blocks(3, s.block(0));
    const AlgebraElement cc = AlgebraElement::from_blocks(std::move(blocks));
    CHECK(hamiltonian(cc, op) ==
          doctest::Approx(3.0 * (s.block(0) * s.block(0)).trace().real()).epsilon(1e-12));
}

TEST_CASE("config validation") {
    IntegratorConfig cfg;
    cfg.n_steps = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = IntegratorConfig{};
    cfg.record_every = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("trajectory diagnostics") {
    EulerSphereOperator op(9);
    IntegratorConfig cfg;
    cfg.h = 0.1;
    cfg.n_steps = 100;
    cfg.record_every = 10;
    cfg.solver = SolverKind::newton;
    const TrajectoryDiagnostics d = run(random_normalized(op.shape(), 42), op, cfg);

    CHECK(d.steps.size() == 11);  // step 0 plus every 10th
    CHECK(d.steps.front() == 0);
    CHECK(d.steps.back() == 100);
    CHECK(d.times.back() == doctest::Approx(10.0));

    // Isospectrality at solver accuracy.
    for (double v : d.spectral_drift) CHECK(v <= 1e-8);

    // Casimirs Tr(Y^2), Tr(Y^3) follow from the spectra.
    const auto casimir = [](const std::vector<std::vector<double>>& spectra, int k) {
        double s = 0.0;
        for (const auto& block : spectra) {
            for (double ev : block) s += std::pow(ev, k);
        }
        return s;
    };
    for (const auto& sp : d.spectra) {
        CHECK(std::abs(casimir(sp, 2) - casimir(d.spectra.front(), 2)) <= 50.0 * 1e-10);
        CHECK(std::abs(casimir(sp, 3) - casimir(d.spectra.front(), 3)) <= 50.0 * 1e-10);
    }
}

TEST_CASE("near-conservation of the hamiltonian") {
    EulerSphereOperator op(9);
    IntegratorConfig cfg;
    cfg.h = 0.1;
    cfg.n_steps = 1000;
    cfg.record_every = 10;
    cfg.solver = SolverKind::newton;
    const TrajectoryDiagnostics d = run(random_normalized(op.shape(), 42), op, cfg);
    const double h0 = d.hamiltonian.front();
    for (double hn : d.hamiltonian) {
        CHECK(std::abs((hn - h0) / h0) <= 1e-4);
    }
}

TEST_CASE("midpoint consistency with effective step 2h") {
    // Y_{n+1} - Y_n = 2h [L X, X] exactly and the midpoint is X + O(h^2), so
    // the defect against Y_n + 2h [L(mid), mid] is O(h^3): ratio ~8 per halving.
    EulerSphereOperator op(7);
    const AlgebraElement y0 = random_normalized(op.shape(), 3);
    SolverConfig scfg;
    double prev = 0.0;
    for (double h : {0.2, 0.1, 0.05}) {
        const StepResult st = step(y0, op, h, SolverKind::newton, scfg);
        const AlgebraElement mid = (y0 + st.y_next) * 0.5;
        const double defect =
            frobenius_norm(st.y_next - (y0 + 2.0 * h * commutator(op.apply(mid), mid)));
        if (prev > 0.0) {
            CHECK(prev / defect >= 6.0);
            CHECK(prev / defect <= 10.0);
        }
        prev = defect;
    }
}

TEST_CASE("conjugacy identity defect") {
    SolverConfig scfg;
    EulerSphereOperator euler(5);
    CHECK(conjugacy_check(random_normalized(euler.shape(), 7), euler, 0.3, SolverKind::newton,
                          scfg) <= 1e-9);
    SpinChainOperator chain(5);
    CHECK(conjugacy_check(random_spin_chain(5, 7), chain, 0.1, SolverKind::newton, scfg) <= 1e-9);
    // h = 0 is exact.
    CHECK(conjugacy_check(random_normalized(euler.shape(), 8), euler, 0.0, SolverKind::linear,
                          scfg) <= 1e-14);
}

}  // TEST_SUITE
