"""Eigenvector wedges from eigenvalues.

For an eigenvalue ``lam`` of A whose geometric and algebraic multiplicities
agree (both ``k``), the k-th adjugate of ``A - lam I`` has rank one and

    adj_k(A - lam I) == s * v @ w.T,    s = (-1)**k * P^(k)(lam) / k!

where ``v`` is the wedge of a basis of ker(A - lam I), ``w`` the wedge of the
biorthogonal basis of ker(A - lam I).T, and ``w.T @ v == 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .compound import compound, higher_adjugate
from .errors import (
    BiorthogonalityError,
    ConsistencyError,
    DefectiveEigenvalueError,
    DegenerateSpectrumError,
    DomainError,
    MultiplicityTooLowError,
)
from .exterior import WedgeVector, pairing, wedge_decode, wedge_encode
from .matrix import Matrix, _minor, inverse, kernel_basis, max_residual, rank, rank1_factor
from .scalars import EXACT, FLOAT, TolerancePolicy, sup_abs, to_scalar
from .spectral import (
    EIGEN_TOL,
    _cluster,
    _refine_groups,
    adjugate_vanishes,
    aberth_roots,
    charpoly_faddeev,
    charpoly_via_adjugates,
    geometric_multiplicity,
    jacobi_derivative,
    poly_derivative_eval,
)

__all__ = [
    "RecoveryResult",
    "TheoremReport",
    "HermitianMagnitudes",
    "dual_basis",
    "recover_wedge",
    "verify_theorem",
    "hermitian_ev_magnitudes",
    "normal_left_from_right",
]


@dataclass(frozen=True)
class RecoveryResult:
    eigenvalue: object
    k: int
    v: WedgeVector
    w: WedgeVector
    scale: object
    right_basis: Matrix
    left_basis: Matrix
    residual: object
    adjugate: Matrix = field(repr=False)


def dual_basis(V: Matrix, W0: Matrix, tol: TolerancePolicy = EIGEN_TOL) -> Matrix:
    """Re-mix the columns of W0 so that ``W.T @ V == I``."""
    if V.shape != W0.shape:
        raise DomainError(f"basis shapes differ: {V.shape} vs {W0.shape}")
    k = V.ncols
    G = W0.T @ V
    if rank(G, tol) < k:
        raise BiorthogonalityError(
            "pairing matrix W0.T @ V is singular: the span of V meets the annihilator of W0"
        )
    return W0 @ inverse(G, tol).T


def _full_multiplicity(A: Matrix, lam) -> RecoveryResult:
    n = A.nrows
    one = to_scalar(1, A.mode)
    unit = WedgeVector(n, n, (one,), A.mode)
    eye = Matrix.identity(n, A.mode)
    return RecoveryResult(lam, n, unit, unit, one, eye, eye, to_scalar(0, A.mode) if A.exact else 0.0,
                          Matrix.identity(1, A.mode))


def recover_wedge(A: Matrix, lam, tol: TolerancePolicy = EIGEN_TOL, k: int | None = None) -> RecoveryResult:
    """Factor adj_k(A - lam I) as scale * v @ w.T with paired eigenvector wedges.

    ``k`` defaults to the geometric multiplicity of ``lam``.  When
    ``A == lam I`` the wedge machinery is skipped and the trivial grade-n
    result is returned.
    """
    if not A.is_square:
        raise DomainError(f"expected a square matrix, got {A.shape}")
    n = A.nrows
    lam = to_scalar(lam, A.mode)
    B = A.shift(lam)
    if B.is_zero(tol, scale=max(A.max_abs(), abs(lam))):
        return _full_multiplicity(A, lam)
    if k is None:
        k = geometric_multiplicity(A, lam, tol)
    if not 1 <= k <= n - 1:
        raise DomainError(f"multiplicity {k} outside 1..{n - 1}")

    M = higher_adjugate(B, k)
    if adjugate_vanishes(B, k, M, tol):
        raise MultiplicityTooLowError(f"adj_{k}(A - lam I) vanishes: geometric multiplicity exceeds {k}")
    c = M.trace()
    if (not c) if M.exact else abs(c) <= tol.relative_eps * M.max_abs():
        raise DefectiveEigenvalueError(
            f"tr adj_{k}(A - lam I) vanishes: algebraic multiplicity exceeds geometric multiplicity {k}"
        )

    scale = jacobi_derivative(A, lam, k) * ((-1) ** k) / factorial(k)
    by_poly = poly_derivative_eval(charpoly_faddeev(A), k, lam) * ((-1) ** k) / factorial(k)
    gap = sup_abs(scale - by_poly)
    if gap if A.exact else gap > 1e-6 * (abs(scale) + M.max_abs()):
        raise ConsistencyError(f"trace and polynomial routes to P^({k})(lam) disagree by {gap}")

    x, y = rank1_factor(M, tol)
    p = max(range(x.nrows), key=lambda i: abs(x[i, 0]))
    beta = x[p, 0]
    v = WedgeVector.from_column(x.scale(1 / beta), n, k)
    w = WedgeVector.from_column(y.scale(beta / scale), n, k)

    Ck = compound(B, k)
    annihilated = Ck @ v.as_column()
    bad = max_residual(annihilated, Matrix.zeros(annihilated.nrows, 1, A.mode))
    if bad if A.exact else bad > tol.relative_eps * max(Ck.max_abs(), 1.0) * v.max_abs() * len(v):
        raise ConsistencyError(f"C_{k}(A - lam I) does not annihilate v (residual {bad})")

    right = wedge_decode(v, tol)
    left = dual_basis(right, wedge_decode(w, tol), tol)
    resid = max_residual(v.as_column().scale(scale) @ w.as_column().T, M)
    if not A.exact:
        resid = resid / M.max_abs()
    return RecoveryResult(lam, k, v, w, scale, right, left, resid, M)


@dataclass(frozen=True)
class TheoremReport:
    """Residuals of the recovered identity.  Float entries are relative."""

    eigenvalue: object
    k: int
    scale: object
    identity_residual: object
    pairing_residual: object
    right_kernel_residual: object
    left_kernel_residual: object
    biorthogonality_residual: object
    derivative_residual: object
    kernel_route_residual: object

    RESIDUALS = (
        "identity_residual",
        "pairing_residual",
        "right_kernel_residual",
        "left_kernel_residual",
        "biorthogonality_residual",
        "derivative_residual",
        "kernel_route_residual",
    )

    def residuals(self) -> dict:
        return {name: getattr(self, name) for name in self.RESIDUALS}

    def max_residual(self):
        return max(self.residuals().values())


def verify_theorem(A: Matrix, lam, tol: TolerancePolicy = EIGEN_TOL, k: int | None = None) -> TheoremReport:
    """Recover the wedges and measure every piece of the identity independently."""
    res = recover_wedge(A, lam, tol, k)
    n, k, lam = A.nrows, res.k, res.eigenvalue
    B = A.shift(lam)
    exact = A.exact
    zero = to_scalar(0, A.mode) if exact else 0.0

    def rel(value, ref):
        return value if exact else value / max(ref, 1e-300)

    if k == n:
        return TheoremReport(lam, k, res.scale, zero, zero, zero, zero, zero, zero, zero)

    M = res.adjugate
    ident = rel(max_residual(res.v.as_column().scale(res.scale) @ res.w.as_column().T, M), M.max_abs())
    pair = sup_abs(pairing(res.w, res.v) - 1)

    def kernel_res(Bm, basis):
        out = Bm @ basis
        r = max_residual(out, Matrix.zeros(out.nrows, out.ncols, A.mode))
        return rel(r, Bm.max_abs() * max(basis.max_abs(), 1e-300))

    right_k = kernel_res(B, res.right_basis)
    left_k = kernel_res(B.T, res.left_basis)
    bi = max_residual(res.left_basis.T @ res.right_basis, Matrix.identity(k, A.mode))
    by_poly = poly_derivative_eval(charpoly_via_adjugates(A), k, lam) * ((-1) ** k) / factorial(k)
    deriv = rel(sup_abs(M.trace() - by_poly), abs(M.trace()))

    V0 = kernel_basis(B, tol)
    W0 = kernel_basis(B.T, tol)
    if V0.ncols != k or W0.ncols != k:
        route = float("inf") if not exact else None
        if exact:
            raise ConsistencyError("kernel dimension differs from the adjugate multiplicity")
    else:
        W = dual_basis(V0, W0, tol)
        v2, w2 = wedge_encode(V0), wedge_encode(W)
        route = rel(max_residual(v2.as_column().scale(res.scale) @ w2.as_column().T, M), M.max_abs())
    return TheoremReport(lam, k, res.scale, ident, pair, right_k, left_k, bi, deriv, route)


@dataclass(frozen=True)
class HermitianMagnitudes:
    """``table[i][j] = |v_ij|**2`` for the unit eigenvector of ``eigenvalues[i]``."""

    eigenvalues: list
    table: list


def hermitian_ev_magnitudes(
    A: Matrix,
    tol: TolerancePolicy = TolerancePolicy(relative_eps=1e-10),
    cluster_tol: float = 1e-6,
) -> HermitianMagnitudes:
    """Squared eigenvector components of a Hermitian matrix from eigenvalues alone.

    Uses ``|v_ij|**2 * prod_{k != i}(l_i - l_k) = prod_k (l_i - mu_k(M_j))``
    with M_j the principal submatrix dropping row and column j.  The right
    side is read off as a diagonal entry of adj(A - l_i I) and the left
    product is P'(l_i) up to sign, so no eigensolve of any M_j is needed.
    """
    if not A.is_square:
        raise DomainError(f"expected a square matrix, got {A.shape}")
    Af = A.to_mode(FLOAT)
    n = Af.nrows
    if max_residual(Af, Af.H) > tol.threshold(Af.max_abs()):
        raise DomainError("matrix is not Hermitian")
    if n == 1:
        return HermitianMagnitudes([Af[0, 0].real], [[1.0]])
    p = charpoly_via_adjugates(Af)
    groups = _cluster(aberth_roots(p), cluster_tol)
    if any(len(g) > 1 for g in groups):
        raise DegenerateSpectrumError("repeated eigenvalue: the identity needs a simple spectrum")
    lams = sorted(c.real for c, _, _ in _refine_groups(p, groups, Af))
    sign_num = (-1) ** (n - 1)
    sign_den = (-1) ** n
    table = []
    for lam in lams:
        B = Af.shift(lam)
        minors = [_minor(B, [r for r in range(n) if r != j], [r for r in range(n) if r != j]) for j in range(n)]
        # prod_{k != i}(l_i - l_k) = (-1)**n P'(l_i), and P'(l_i) = -sum(minors)
        den = sign_den * -sum(minors)
        table.append([(sign_num * m / den).real for m in minors])
    return HermitianMagnitudes(lams, table)


def normal_left_from_right(v):
    """Left eigenvector of a normal matrix from a right one: the entrywise conjugate."""
    if isinstance(v, Matrix):
        return v.conj()
    if isinstance(v, WedgeVector):
        return WedgeVector(v.n, v.k, tuple(c.conjugate() for c in v.coords), v.mode)
    return type(v)(c.conjugate() for c in v)
