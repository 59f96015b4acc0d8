"""End-to-end tests of the command-line interface, driven through subprocess.

The binary path comes from the ISOCUBIC_BIN environment variable (set by
ctest); falls back to the conventional build location.
"""

import os
import pathlib
import subprocess

import pytest

BIN = os.environ.get(
    "ISOCUBIC_BIN",
    str(pathlib.Path(__file__).resolve().parents[2] / "build" / "tools" / "isocubic"),
)

pytestmark = pytest.mark.skipif(not os.path.exists(BIN), reason="isocubic binary not built")


def run(*args, **kw):
    return subprocess.run([BIN, *args], capture_output=True, text=True, **kw)


def test_usage_error_exit_code():
    assert run().returncode == 1
    assert run("solve", "--model", "nosuch").returncode == 1
    assert run("frobnicate").returncode == 1


def test_solve_converged_exit_zero():
    r = run("solve", "--model", "euler", "--n", "17", "--h", "0.5", "--solver", "linear",
            "--seed", "1")
    assert r.returncode == 0
    assert "converged: yes" in r.stdout
    iters = int(r.stdout.split("iterations: ")[1].split()[0])
    assert 4 <= iters <= 15


def test_solve_h_zero_single_iteration():
    for model, n in [("euler", 5), ("alfven", 5), ("chain", 6)]:
        r = run("solve", "--model", model, "--n", str(n), "--h", "0", "--solver", "explicit")
        assert r.returncode == 0
        assert "iterations: 1" in r.stdout


def test_solve_nonconvergence_exit_two():
    r = run("solve", "--model", "chain", "--n", "129", "--h", "0.5", "--solver", "explicit")
    assert r.returncode == 2
    assert "converged: no" in r.stdout


def test_solve_csv_output(tmp_path):
    out = tmp_path / "row.csv"
    r = run("solve", "--model", "euler", "--n", "9", "--h", "0.5", "--solver", "newton",
            "--out", str(out))
    assert r.returncode == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "model,N,h,solver,seed,converged,iterations,final_step_norm,residual_norm,wall_s"
    assert lines[1].startswith("euler,9,")


def test_bench_csv_schema_and_determinism(tmp_path):
    args = ["bench", "--model", "euler", "--h", "0.5", "--max-n", "9", "--out"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(*args, str(a)).returncode == 0
    assert run(*args, str(b)).returncode == 0

    ta, tb = a.read_text().splitlines(), b.read_text().splitlines()
    assert ta[0] == "model,N,h,solver,seeds,mean_iter,converged_frac,mean_wall_s,residual_max"
    assert len(ta) == 1 + 3 * 3  # header + 3 sizes x 3 solvers

    def strip_wall(lines):
        out = []
        for ln in lines:
            f = ln.split(",")
            out.append(",".join(f[:7] + f[8:]) if len(f) > 8 else ln)
        return out

    assert strip_wall(ta) == strip_wall(tb)

    # Rows sorted by (N, solver), numeric fields in scientific notation.
    rows = [ln.split(",") for ln in ta[1:]]
    keys = [(int(r[1]), r[3]) for r in rows]
    assert keys == sorted(keys)
    assert all("e" in r[2] for r in rows)


def test_bench_chain_nc_rows(tmp_path):
    out = tmp_path / "chain.csv"
    r = run("bench", "--model", "chain", "--h", "0.5", "--max-n", "129", "--solvers",
            "explicit,linear", "--out", str(out))
    assert r.returncode == 0
    rows = [ln.split(",") for ln in out.read_text().strip().splitlines()[1:]]
    for row in rows:
        n, solver, mean_iter, frac = int(row[1]), row[3], row[5], float(row[6])
        if solver == "linear":
            assert frac == 1.0
            assert mean_iter != ""
        elif n >= 65:
            # Robust non-convergence regime: empty mean marks NC.
            assert frac < 1.0
            assert mean_iter == ""


def test_evolve_csv(tmp_path):
    out = tmp_path / "evolve.csv"
    r = run("evolve", "--model", "euler", "--n", "9", "--h", "0.1", "--steps", "100",
            "--record-every", "10", "--seed", "3", "--out", str(out))
    assert r.returncode == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "step,time,hamiltonian,spectral_drift,solver_iters"
    assert len(lines) == 1 + 11  # header + steps 0,10,...,100
    drift = [float(ln.split(",")[3]) for ln in lines[1:]]
    assert max(drift) <= 1e-8


def test_evolve_alfven_completes():
    r = run("evolve", "--model", "alfven", "--n", "9", "--h", "0.5", "--lambda", "5",
            "--steps", "50", "--out", os.devnull)
    assert r.returncode == 0


def test_evolve_step_failure_exit_three(tmp_path):
    out = tmp_path / "fail.csv"
    r = run("evolve", "--model", "chain", "--n", "129", "--h", "0.5", "--solver", "explicit",
            "--steps", "5", "--out", str(out))
    assert r.returncode == 3
    assert "aborted at step" in r.stderr
    # Partial CSV was flushed: header plus the step-0 row.
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("step,")
    assert len(lines) >= 2


def test_demo_riccati_explicit_vectors():
    r = run("demo-riccati", "--x", "0", "0", "1", "--y", "0", "0", "2", "--h", "1")
    assert r.returncode == 0
    assert "NON-UNIQUE" in r.stdout

    r = run("demo-riccati", "--x", "0", "0", "1", "--y", "0", "0", "1", "--h", "1")
    assert r.returncode == 0
    assert "verdict: UNIQUE" in r.stdout

    r = run("demo-riccati", "--x", "0", "0", "1", "--y", "0", "0", "0.5", "--h", "1")
    assert r.returncode == 2


def test_demo_riccati_random_seed():
    r = run("demo-riccati", "--seed", "5", "--h", "0.4")
    assert r.returncode == 0
    assert "NON-UNIQUE" in r.stdout
    for line in r.stdout.splitlines():
        if "residual" in line:
            res = float(line.rsplit("residual = ", 1)[1])
            assert res <= 1e-12
