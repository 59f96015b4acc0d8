"""Smoke tests for the python extension module."""

import numpy as np
import pytest

isocubic = pytest.importorskip("isocubic")


def test_random_element_contract():
    y = isocubic.Element.random([5], seed=1)
    assert y.sizes == [5]
    assert abs(y.norm() - 1.0) < 1e-13
    blocks = y.blocks
    assert len(blocks) == 1
    a = blocks[0]
    assert np.allclose(a, -a.conj().T, atol=1e-14)
    assert abs(np.trace(a)) < 1e-13
    same = isocubic.Element.random([5], seed=1)
    assert np.array_equal(same.blocks[0], a)


def test_solve_euler_and_certificate():
    op = isocubic.Operator.euler(9)
    y = isocubic.Element.random([9], seed=3)
    x, report = isocubic.solve(y, op, "linear", h=0.5)
    assert report.converged
    assert 1 <= report.iterations <= 50
    assert isocubic.residual_norm(x, y, op, 0.5) <= 1e-9
    # Cross-solver agreement.
    xn, rn = isocubic.solve(y, op, "newton", h=0.5)
    assert rn.converged
    assert (x - xn).norm() <= 1e-8


def test_oracle_agreement():
    op = isocubic.Operator.euler(5)
    y = isocubic.Element.random([5], seed=11)
    x, report = isocubic.solve(y, op, "explicit", h=0.3)
    assert report.converged
    xo = isocubic.oracle_solve(y, op, 0.3)
    assert (x - xo).norm() <= 1e-8


def test_step_preserves_spectrum():
    op = isocubic.Operator.euler(7)
    y = isocubic.Element.random([7], seed=5)
    before = isocubic.eigenvalues(y)
    y1, x, report = isocubic.step(y, op, 0.1)
    assert report.converged
    after = isocubic.eigenvalues(y1)
    assert np.allclose(np.array(before), np.array(after), atol=1e-10)
    assert abs(isocubic.hamiltonian(y1, op) - isocubic.hamiltonian(y, op)) < 1e-4


def test_evolve_diagnostics():
    op = isocubic.Operator.chain(6, 1.0)
    y0 = isocubic.Element.random([2] * 6, seed=9)
    out = isocubic.evolve(y0, op, h=0.1, steps=20, record_every=5)
    assert out["steps"] == [0, 5, 10, 15, 20]
    assert max(out["spectral_drift"]) <= 1e-9
    h = np.asarray(out["hamiltonian"])
    assert np.max(np.abs(h - h[0])) <= 1e-3 * max(1.0, abs(h[0]))


def test_operator_norms():
    assert abs(isocubic.operator_norm(isocubic.Operator.euler(7)) - 0.5) < 1e-7
    assert abs(isocubic.operator_norm(isocubic.Operator.chain(9, 1.0)) - 2.0) < 1e-5


def test_theorem_bound():
    op = isocubic.Operator.euler(9)
    y = isocubic.Element.random([9], seed=2)
    assert abs(isocubic.theorem_h_bound(y, op) - 2.0 / 3.0) < 1e-6


def test_riccati_branches():
    out = isocubic.solve_su2_branches(np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, 2.0]), 1.0)
    assert out["distinct"]
    assert np.allclose(out["p_parallel_plus"], [0, 0, 2], atol=1e-12)
    assert out["residual_plus"] <= 1e-12
    assert out["residual_minus"] <= 1e-12
    with pytest.raises(isocubic.NoRealSolutionError):
        isocubic.solve_su2_branches(np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, 0.5]), 1.0)


def test_conjugacy():
    op = isocubic.Operator.alfven(5, 5.0)
    y = isocubic.Element.random([5, 5], seed=4)
    assert isocubic.conjugacy_check(y, op, 0.3) <= 1e-9
