"""Seeded random matrix families and the identity checks run by ``verify``.

Every check returns :class:`CheckResult` rows: one per identity, carrying the
worst residual over all trials.  Exact checks pass only on identically zero
residuals; float checks compare against the stated threshold.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .combinatorics import lex_subsets, subset_rank, subset_unrank, complement
from .compound import adjugate_by_conjugation, compound, det_sum, higher_adjugate
from .errors import DefectiveEigenvalueError, EigenwedgeError
from .exterior import wedge_decode, wedge_encode
from .matrix import Matrix, det, det_laplace, inverse, max_residual, rank
from .recovery import hermitian_ev_magnitudes, recover_wedge, verify_theorem
from .scalars import EXACT, FLOAT, QQi
from .spectral import (
    aberth_roots,
    charpoly_faddeev,
    charpoly_via_adjugates,
    cluster_multiplicities,
    geometric_multiplicity,
    jacobi_derivative,
    poly_derivative_eval,
)

FLOAT_THEOREM_TOL = 1e-8
JACOBI_FLOAT_TOL = 1e-9
HERMITIAN_TOL = 1e-8
ROW_SUM_TOL = 1e-10


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: object = 0
    threshold: object = 0
    trials: int = 0
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "residual": _decimal(self.residual),
            "threshold": _decimal(self.threshold),
            "trials": self.trials,
            "detail": self.detail,
        }


DEFAULT_SEED = 20191213

def _decimal(x) -> str:
    if isinstance(x, Fraction):
        return str(x) if x.denominator == 1 else f"{float(x):.17g}"
    if isinstance(x, float):
        return repr(x)
    return str(x)


class _Tracker:
    """Accumulates the worst residual for one named identity."""

    def __init__(self, name: str, threshold=0):
        self.name = name
        self.threshold = threshold
        self.worst = 0
        self.trials = 0
        self.failures = 0
        self.detail = ""

    def add(self, residual, note: str = ""):
        self.trials += 1
        if residual > self.worst:
            self.worst = residual
        if residual > self.threshold:
            self.failures += 1
            if not self.detail:
                self.detail = note or f"residual {_decimal(residual)}"

    def fail(self, note: str):
        self.trials += 1
        self.failures += 1
        if not self.detail:
            self.detail = note

    def result(self) -> CheckResult:
        return CheckResult(self.name, self.failures == 0, self.worst, self.threshold, self.trials, self.detail)


# -- generators ----------------------------------------------------------------


def random_int_matrix(rng: random.Random, m: int, n: int | None = None, lo: int = -5, hi: int = 5,
                      mode: str = EXACT) -> Matrix:
    n = m if n is None else n
    return Matrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)], mode)


def random_unimodular(rng: random.Random, n: int) -> tuple[Matrix, Matrix]:
    """Integer S with det +-1 and its integer inverse."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    rng.shuffle(rows)
    S = Matrix(rows)
    return S, inverse(S)


def planted_rank(rng: random.Random, n: int, r: int) -> Matrix:
    """P diag(1,..,1,0,..,0) Q with r ones and unimodular P, Q."""
    P, _ = random_unimodular(rng, n)
    Q, _ = random_unimodular(rng, n)
    return P @ Matrix.diag([1] * r + [0] * (n - r)) @ Q


def planted_spectrum(rng: random.Random, n: int, k: int, lam: int) -> Matrix:
    """S diag(lam x k, others) S^-1 with the others drawn away from lam."""
    others = [rng.choice([x for x in range(-4, 5) if x != lam]) for _ in range(n - k)]
    S, Si = random_unimodular(rng, n)
    return S @ Matrix.diag([lam] * k + others) @ Si


def jordan_embedded(rng: random.Random, n: int, m: int, lam: int, extra_lam: int = 0) -> Matrix:
    """S (J_m(lam) + diag(...)) S^-1; ``extra_lam`` more copies of lam sit on the diagonal part."""
    rows = [[0] * n for _ in range(n)]
    for i in range(m):
        rows[i][i] = lam
        if i + 1 < m:
            rows[i][i + 1] = 1
    for i in range(m, n):
        rows[i][i] = lam if i - m < extra_lam else rng.choice([x for x in range(-4, 5) if x != lam])
    S, Si = random_unimodular(rng, n)
    return S @ Matrix(rows) @ Si


def random_hermitian(rng: random.Random, n: int, complex_entries: bool, min_gap: float = 1e-3) -> Matrix:
    """Random Hermitian matrix whose eigenvalues are at least ``min_gap`` apart."""
    while True:
        rows = [[0j] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = complex(rng.uniform(-2, 2))
            for j in range(i + 1, n):
                z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1) if complex_entries else 0.0)
                rows[i][j] = z
                rows[j][i] = z.conjugate()
        ev = np.linalg.eigvalsh(np.array(rows))
        if n == 1 or np.min(np.diff(ev)) >= min_gap:
            return Matrix(rows, FLOAT)


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


# -- checks --------------------------------------------------------------------


def check_exact_identities(rng, trials: int = 200, dim_max: int = 5, corrupt: bool = False) -> list[CheckResult]:
    names = [
        "compound_multiplicative",
        "compound_adjugate_product",
        "adjugate_reversal",
        "adjugate_conjugation",
        "det_sum_expansion",
        "charpoly_adjugate_vs_faddeev",
        "determinant_vs_laplace",
    ]
    t = {name: _Tracker(name) for name in names}
    for trial in range(trials):
        n = rng.randint(1, dim_max)
        A = random_int_matrix(rng, n)
        B = random_int_matrix(rng, n)
        AB = A @ B
        if corrupt and trial == 0:
            rows = AB.tolist()
            rows[0][0] = rows[0][0] + 1
            AB = Matrix(rows)
        dA = det(A)
        t["determinant_vs_laplace"].add(abs(dA - det_laplace(A)))
        for k in range(0, n + 1):
            CA, CB = compound(A, k), compound(B, k)
            t["compound_multiplicative"].add(max_residual(compound(AB, k), CA @ CB))
            adjA = higher_adjugate(A, k)
            eye = Matrix.identity(CA.nrows).scale(dA)
            t["compound_adjugate_product"].add(max(max_residual(CA @ adjA, eye), max_residual(adjA @ CA, eye)))
            t["adjugate_reversal"].add(max_residual(higher_adjugate(AB, k), higher_adjugate(B, k) @ adjA))
            if 1 <= k <= n - 1:
                t["adjugate_conjugation"].add(max_residual(adjugate_by_conjugation(A, k), adjA))
        t["det_sum_expansion"].add(abs(det_sum(A, B) - det(A + B)))
        pa, pf = charpoly_via_adjugates(A), charpoly_faddeev(A)
        t["charpoly_adjugate_vs_faddeev"].add(max(abs(a - b) for a, b in zip(pa.coeffs, pf.coeffs)))
    return [t[name].result() for name in names]


def check_jacobi(rng, trials: int = 200, dim_max: int = 5, lambdas: int = 10) -> list[CheckResult]:
    exact = _Tracker("jacobi_derivative_exact")
    flt = _Tracker("jacobi_derivative_float", JACOBI_FLOAT_TOL)
    for _ in range(trials):
        n = rng.randint(1, dim_max)
        A = random_int_matrix(rng, n)
        Af = A.to_mode(FLOAT)
        p = charpoly_via_adjugates(A)
        pf = charpoly_via_adjugates(Af)
        for _ in range(lambdas):
            lam = _random_rational(rng)
            for j in range(1, n + 1):
                exact.add(abs(jacobi_derivative(A, lam, j) - poly_derivative_eval(p, j, lam)))
                a = jacobi_derivative(Af, float(lam), j)
                b = poly_derivative_eval(pf, j, float(lam))
                flt.add(abs(a - b) / max(abs(a), abs(b), 1.0))
    return [exact.result(), flt.result()]


def check_rank_lemma(rng, dim_max: int = 6, repeats: int = 1) -> list[CheckResult]:
    vanish = _Tracker("rank_lemma_vanishing")
    ranks = _Tracker("rank_lemma_rank")
    geo = _Tracker("multiplicity_rank_lemma_family")
    for _ in range(repeats):
        for n in range(2, dim_max + 1):
            for k in range(1, n):
                A = planted_rank(rng, n, n - k)
                for j in range(1, n):
                    M = higher_adjugate(A, j)
                    if j < k:
                        vanish.add(max_residual(M, Matrix.zeros(M.nrows, M.ncols)))
                    else:
                        got = rank(M)
                        want = comb(n - k, n - j)
                        ranks.add(abs(got - want), f"n={n} k={k} j={j}: rank {got}, expected {want}")
                g = geometric_multiplicity(A, 0)
                geo.add(abs(g - (n - rank(A))), f"n={n}: adjugate route {g}, rank route {n - rank(A)}")
    return [vanish.result(), ranks.result(), geo.result()]


def _spectral_trial(rng, dim_max):
    n = rng.randint(2, dim_max)
    k = rng.randint(1, n - 1)
    lam = rng.randint(-3, 3)
    return n, k, lam, planted_spectrum(rng, n, k, lam)


def check_theorem_exact(rng, trials: int = 100, dim_max: int = 6, corrupt: bool = False) -> list[CheckResult]:
    ident = _Tracker("theorem_identity_exact")
    pair = _Tracker("theorem_pairing_exact")
    kern = _Tracker("theorem_kernels_exact")
    deriv = _Tracker("theorem_scale_vs_derivative_exact")
    lower = _Tracker("theorem_lower_adjugates_vanish")
    geo = _Tracker("multiplicity_planted_family")
    for trial in range(trials):
        n, k, lam, A = _spectral_trial(rng, dim_max)
        if corrupt and trial == 0:
            rows = A.tolist()
            rows[0][0] = rows[0][0] + 1
            A = Matrix(rows)
        try:
            g = geometric_multiplicity(A, lam)
            geo.add(abs(g - (n - rank(A.shift(lam)))))
            geo.add(abs(g - k), f"planted k={k}, detected {g}")
            rep = verify_theorem(A, lam, k=k)
        except EigenwedgeError as exc:
            for tr in (ident, pair, kern, deriv):
                tr.fail(f"n={n} k={k} lam={lam}: {type(exc).__name__}: {exc}")
            continue
        ident.add(max(rep.identity_residual, rep.kernel_route_residual))
        pair.add(max(rep.pairing_residual, rep.biorthogonality_residual))
        kern.add(max(rep.right_kernel_residual, rep.left_kernel_residual))
        deriv.add(rep.derivative_residual)
        B = A.shift(lam)
        for j in range(1, k):
            M = higher_adjugate(B, j)
            lower.add(max_residual(M, Matrix.zeros(M.nrows, M.ncols)))
    return [ident.result(), pair.result(), kern.result(), deriv.result(), lower.result(), geo.result()]


def check_theorem_float(rng, trials: int = 100, dim_max: int = 6, corrupt: bool = False) -> list[CheckResult]:
    ident = _Tracker("theorem_identity_float", FLOAT_THEOREM_TOL)
    pair = _Tracker("theorem_pairing_float", FLOAT_THEOREM_TOL)
    mult = _Tracker("multiplicity_float_clusters")
    for trial in range(trials):
        n, k, lam, A = _spectral_trial(rng, dim_max)
        Af = A.to_mode(FLOAT)
        if corrupt and trial == 0:
            rows = Af.tolist()
            rows[0][0] += 1
            Af = Matrix(rows, FLOAT)
        try:
            entries = cluster_multiplicities(aberth_roots(charpoly_via_adjugates(Af)), Af)
            e = min(entries, key=lambda e: abs(e.eigenvalue - lam))
            if abs(e.eigenvalue - lam) > 1e-6:
                raise EigenwedgeError(f"no computed eigenvalue near {lam}")
            mult.add(abs(e.algebraic_multiplicity - k) + abs(e.geometric_multiplicity - k),
                     f"n={n} planted k={k}: alg {e.algebraic_multiplicity}, geo {e.geometric_multiplicity}")
            rep = verify_theorem(Af, e.eigenvalue, k=k)
        except EigenwedgeError as exc:
            for tr in (ident, pair):
                tr.fail(f"n={n} k={k} lam={lam}: {type(exc).__name__}: {exc}")
            continue
        ident.add(rep.identity_residual, f"n={n} k={k} lam={lam}: {rep.identity_residual:.3e}")
        pair.add(max(rep.pairing_residual, rep.biorthogonality_residual))
    return [ident.result(), pair.result(), mult.result()]


def check_defective(rng, trials: int = 50, dim_max: int = 5) -> list[CheckResult]:
    raised = _Tracker("defective_detection")
    trace = _Tracker("defective_trace_vanishes")
    geo = _Tracker("multiplicity_defective_family")
    for _ in range(trials):
        n = rng.randint(2, dim_max)
        m = rng.randint(2, n)
        extra = rng.randint(0, n - m)
        lam = rng.randint(-3, 3)
        A = jordan_embedded(rng, n, m, lam, extra)
        k = 1 + extra
        g = geometric_multiplicity(A, lam)
        geo.add(abs(g - k) + abs(g - (n - rank(A.shift(lam)))), f"n={n} m={m}: geo {g}, expected {k}")
        if k == n:
            continue
        trace.add(abs(higher_adjugate(A.shift(lam), k).trace()))
        try:
            recover_wedge(A, lam)
        except DefectiveEigenvalueError:
            raised.add(0)
        except EigenwedgeError as exc:
            raised.fail(f"wrong error {type(exc).__name__}: {exc}")
        else:
            raised.fail(f"n={n} m={m} lam={lam}: recovery returned a result for a defective eigenvalue")
    return [raised.result(), trace.result(), geo.result()]


def check_hermitian(rng, trials: int = 100, dim_max: int = 8) -> list[CheckResult]:
    oracle = _Tracker("hermitian_vs_eigh", HERMITIAN_TOL)
    sums = _Tracker("hermitian_row_sums", ROW_SUM_TOL)
    for trial in range(trials):
        n = rng.randint(1, dim_max)
        A = random_hermitian(rng, n, complex_entries=bool(trial % 2))
        try:
            got = hermitian_ev_magnitudes(A)
        except EigenwedgeError as exc:
            oracle.fail(f"n={n}: {type(exc).__name__}: {exc}")
            continue
        _, vecs = np.linalg.eigh(np.array(A.tolist()))
        want = (np.abs(vecs) ** 2).T
        oracle.add(float(np.max(np.abs(np.array(got.table) - want))), f"n={n}")
        sums.add(max(abs(sum(row) - 1) for row in got.table))
    return [oracle.result(), sums.result()]


def check_wedge_roundtrip(rng, trials: int = 200, dim_max: int = 6, k_max: int = 3) -> list[CheckResult]:
    rt = _Tracker("wedge_roundtrip")
    funct = _Tracker("wedge_functoriality")
    for _ in range(trials):
        n = rng.randint(1, dim_max)
        k = rng.randint(1, min(k_max, n))
        while True:
            X = random_int_matrix(rng, n, k)
            if rank(X) == k:
                break
        p = wedge_encode(X)
        q = wedge_encode(wedge_decode(p))
        rt.add(max(abs(a - b) for a, b in zip(p.coords, q.coords)))
        A = random_int_matrix(rng, n)
        lhs = wedge_encode(A @ X).as_column()
        funct.add(max_residual(lhs, compound(A, k) @ p.as_column()))
    return [rt.result(), funct.result()]


def check_combinatorics(dim_max: int = 8) -> list[CheckResult]:
    t = _Tracker("subset_rank_unrank")
    for n in range(0, dim_max + 1):
        for k in range(0, n + 1):
            subs = lex_subsets(n, k)
            ok = len(subs) == comb(n, k) and subs == sorted(subs, key=lambda s: s.elements)
            for r, s in enumerate(subs):
                ok = ok and subset_rank(s) == r and subset_unrank(n, k, r) == s
                ok = ok and complement(complement(s)) == s
            t.add(0 if ok else 1, f"n={n} k={k}")
    return [t.result()]


@dataclass
class SuiteReport:
    seed: int
    results: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "checks": [r.as_dict() for r in self.results],
        }


def run_suite(trials: int = 40, dim_max: int = 5, seed: int = DEFAULT_SEED, corrupt: bool = False) -> SuiteReport:
    """The whole identity suite at a configurable size.

    ``corrupt`` perturbs one entry of a matrix after it has been built (the
    product AB, and a planted-spectrum matrix), which must make checks fail.
    """
    start = time.perf_counter()
    rng = random.Random(seed)
    dim_max = max(2, dim_max)
    results = []
    results += check_combinatorics(min(dim_max + 2, 8))
    results += check_exact_identities(rng, trials, dim_max, corrupt)
    results += check_jacobi(rng, trials, dim_max, lambdas=3)
    results += check_rank_lemma(rng, min(dim_max + 1, 6))
    results += check_theorem_exact(rng, trials, min(dim_max + 1, 6), corrupt)
    results += check_theorem_float(rng, trials, min(dim_max + 1, 6), corrupt)
    results += check_defective(rng, trials, dim_max)
    results += check_hermitian(rng, trials, min(dim_max + 3, 8))
    results += check_wedge_roundtrip(rng, trials, min(dim_max + 1, 6))
    return SuiteReport(seed, results, time.perf_counter() - start)


def check_matrix(A: Matrix, seed: int = DEFAULT_SEED, lambdas: int = 3) -> SuiteReport:
    """Identities that hold for any single square matrix (``verify FILE``)."""
    start = time.perf_counter()
    rng = random.Random(seed)
    n = A.nrows
    exact = A.exact
    thr = 0 if exact else 1e-9

    def rel(a, b):
        d = max_residual(a, b)
        return d if exact else d / max(b.max_abs(), a.max_abs(), 1.0)

    t = {name: _Tracker(name, thr) for name in (
        "compound_multiplicative", "compound_adjugate_product", "adjugate_reversal",
        "adjugate_conjugation", "det_sum_expansion", "charpoly_adjugate_vs_faddeev", "jacobi_derivative")}
    B = random_int_matrix(rng, n, mode=A.mode)
    AB = A @ B
    dA = det(A)
    for k in range(0, n + 1):
        CA = compound(A, k)
        t["compound_multiplicative"].add(rel(compound(AB, k), CA @ compound(B, k)))
        adjA = higher_adjugate(A, k)
        eye = Matrix.identity(CA.nrows, A.mode).scale(dA)
        t["compound_adjugate_product"].add(max(rel(CA @ adjA, eye), rel(adjA @ CA, eye)))
        t["adjugate_reversal"].add(rel(higher_adjugate(AB, k), higher_adjugate(B, k) @ adjA))
        if 1 <= k <= n - 1:
            t["adjugate_conjugation"].add(rel(adjugate_by_conjugation(A, k), adjA))
    lhs, rhs = det_sum(A, B), det(A + B)
    t["det_sum_expansion"].add(abs(lhs - rhs) if exact else abs(lhs - rhs) / max(abs(rhs), 1.0))
    pa, pf = charpoly_via_adjugates(A), charpoly_faddeev(A)
    scale = 1.0 if exact else max(max(abs(c) for c in pa.coeffs), 1.0)
    t["charpoly_adjugate_vs_faddeev"].add(max(abs(a - b) for a, b in zip(pa.coeffs, pf.coeffs)) / scale
                                          if not exact else max(abs(a - b) for a, b in zip(pa.coeffs, pf.coeffs)))
    for _ in range(lambdas):
        lam = _random_rational(rng)
        lam = lam if exact else float(lam)
        for j in range(1, n + 1):
            a, b = jacobi_derivative(A, lam, j), poly_derivative_eval(pa, j, lam)
            t["jacobi_derivative"].add(abs(a - b) if exact else abs(a - b) / max(abs(a), abs(b), 1.0))
    return SuiteReport(seed, [tr.result() for tr in t.values()], time.perf_counter() - start)
