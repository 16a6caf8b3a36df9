"""Acceptance criteria, one test per criterion, each at its stated size and tolerance.

Every test records a PASS/FAIL line; the lines are printed in the terminal
summary (see conftest.py) and when this file is run as a script.
"""

import functools
import random
import subprocess
import sys
import time

import pytest

from eigenwedge import suite

SEED = suite.DEFAULT_SEED
LINES: list[str] = []


def _record(number, title, results, extra_ok=True, note=""):
    ok = extra_ok and all(r.passed for r in results)
    worst = max((r.residual for r in results), default=0, key=float)
    checks = ", ".join(f"{r.name}={'ok' if r.passed else 'FAIL'}" for r in results)
    LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} (worst residual {worst}; {checks}){note}")
    failures = [f"{r.name}: residual {r.residual} > {r.threshold} {r.detail}" for r in results if not r.passed]
    assert ok, "; ".join(failures) or note


def _rng(offset):
    return random.Random(SEED + offset)


@functools.cache
def _exact_identities():
    t0 = time.perf_counter()
    results = suite.check_exact_identities(_rng(1), trials=200, dim_max=5)
    return results, time.perf_counter() - t0


@functools.cache
def _rank_lemma():
    return suite.check_rank_lemma(_rng(3), dim_max=6, repeats=3)


@functools.cache
def _theorem():
    rng = _rng(4)
    return suite.check_theorem_exact(rng, trials=100, dim_max=6) + suite.check_theorem_float(rng, trials=100, dim_max=6)


@functools.cache
def _defective():
    return suite.check_defective(_rng(5), trials=100, dim_max=5)


def test_criterion_1_exact_identities():
    results, seconds = _exact_identities()
    _record(1, "exact identity suite, 200 matrices, n <= 5", results, seconds < 60, f" in {seconds:.1f}s")
    assert all(r.residual == 0 for r in results)
    assert min(r.trials for r in results if r.name != "adjugate_conjugation") >= 200


def test_criterion_2_jacobi():
    results = suite.check_jacobi(_rng(2), trials=200, dim_max=5, lambdas=10)
    _record(2, "Jacobi derivative formula, exact and float", results)
    exact = next(r for r in results if r.name == "jacobi_derivative_exact")
    flt = next(r for r in results if r.name == "jacobi_derivative_float")
    assert exact.residual == 0 and flt.threshold <= 1e-9


def test_criterion_3_rank_lemma():
    results = [r for r in _rank_lemma() if r.name.startswith("rank_lemma")]
    _record(3, "rank lemma on planted-rank matrices, n <= 6", results)


def test_criterion_4_main_theorem():
    results = [r for r in _theorem() if r.name.startswith("theorem")]
    _record(4, "wedge recovery identity, 100 exact + 100 float, n <= 6", results)
    assert all(r.trials >= 100 for r in results if r.name != "theorem_lower_adjugates_vanish")
    assert all(r.residual == 0 for r in results if r.name.endswith("exact"))
    assert all(r.threshold <= 1e-8 for r in results if r.name.endswith("float"))


def test_criterion_5_defective():
    results = [r for r in _defective() if r.name.startswith("defective")]
    _record(5, "defective eigenvalues raise, trace vanishes", results)


def test_criterion_6_hermitian():
    results = suite.check_hermitian(_rng(6), trials=120, dim_max=8)
    _record(6, "Hermitian magnitudes vs eigendecomposition, n <= 8", results)
    assert all(r.trials >= 100 for r in results)


def test_criterion_7_wedge_round_trip():
    results = suite.check_wedge_roundtrip(_rng(7), trials=400, dim_max=6, k_max=3)
    _record(7, "wedge encode/decode fixed point, n <= 6, k <= 3", results)
    assert all(r.residual == 0 for r in results)


def test_criterion_8_multiplicity():
    results = [r for r in _rank_lemma() + _theorem() + _defective() if r.name.startswith("multiplicity")]
    _record(8, "geometric multiplicity via adjugate ranks vs kernel dimension", results)
    assert len(results) == 4


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "eigenwedge", "verify", *args], capture_output=True, text=True)


def test_criterion_9_cli():
    full = _cli("--trials", "200", "--dim-max", "5", "--seed", str(SEED))
    bad = _cli("--corrupt", "--seed", str(SEED))
    ok = full.returncode == 0 and bad.returncode == 1 and "FAIL" in bad.stdout
    note = f"verify exit {full.returncode}, verify --corrupt exit {bad.returncode}"
    LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion 9: CLI verify ({note})")
    assert ok, full.stdout + full.stderr + bad.stdout + bad.stderr


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
