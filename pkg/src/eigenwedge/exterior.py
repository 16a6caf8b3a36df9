"""Wedge products of column lists in Plücker coordinates, and their inverse."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .combinatorics import _lex_tuples, subset_rank, IndexSubset
from .errors import DomainError, NotDecomposableError, ZeroMatrixError
from .matrix import Matrix, _det_rows
from .scalars import DEFAULT_TOL, TolerancePolicy, sup_abs, to_scalar

__all__ = ["WedgeVector", "wedge_encode", "wedge_decode", "pairing"]


@dataclass(frozen=True)
class WedgeVector:
    """Element of the k-th exterior power of K^n, coordinates in lex subset order."""

    n: int
    k: int
    coords: tuple
    mode: str

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise DomainError(f"grade {self.k} outside 0..{self.n}")
        if len(self.coords) != comb(self.n, self.k):
            raise DomainError(f"{len(self.coords)} coordinates for C({self.n},{self.k}) = {comb(self.n, self.k)}")

    def __getitem__(self, s: IndexSubset):
        return self.coords[subset_rank(s)]

    def __len__(self):
        return len(self.coords)

    def as_column(self) -> Matrix:
        return Matrix._wrap([[c] for c in self.coords], self.mode)

    @classmethod
    def from_column(cls, col: Matrix, n: int, k: int) -> "WedgeVector":
        return cls(n, k, col.column(0), col.mode)

    def scale(self, c) -> "WedgeVector":
        c = to_scalar(c, self.mode)
        return WedgeVector(self.n, self.k, tuple(c * a for a in self.coords), self.mode)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def max_abs(self) -> float:
        return max((abs(a) for a in self.coords), default=0.0)


def wedge_encode(X: Matrix) -> WedgeVector:
    """x_1 ^ ... ^ x_k for the columns of the n x k matrix X."""
    n, k = X.shape
    if k < 1 or k > n:
        raise DomainError(f"wedge of {k} vectors in dimension {n}")
    rows = X._rows
    coords = tuple(_det_rows([list(rows[i]) for i in s], X.exact) for s in _lex_tuples(n, k))
    return WedgeVector(n, k, coords, X.mode)


def _pivot(p: WedgeVector) -> int:
    if p.mode == "exact":
        return next(i for i, c in enumerate(p.coords) if c)
    return max(range(len(p.coords)), key=lambda i: abs(p.coords[i]))


def wedge_decode(p: WedgeVector, tol: TolerancePolicy = DEFAULT_TOL) -> Matrix:
    """Columns V with wedge_encode(V) == p, for decomposable nonzero p."""
    n, k = p.n, p.k
    scale = p.max_abs()
    if p.is_zero() or (p.mode != "exact" and scale <= tol.absolute_floor):
        raise ZeroMatrixError("cannot decode the zero wedge")
    if k == 0:
        raise DomainError("grade-0 wedge has no spanning vectors")
    index = {t: r for r, t in enumerate(_lex_tuples(n, k))}
    piv = _lex_tuples(n, k)[_pivot(p)]
    p_i = p.coords[index[piv]]
    zero = to_scalar(0, p.mode)
    cols = []
    for j in range(k):
        others = piv[:j] + piv[j + 1:]
        col = []
        for m in range(n):
            if m in others:
                col.append(zero)
                continue
            # rows of piv with position j replaced by m, then sorted
            tup = piv[:j] + (m,) + piv[j + 1:]
            inversions = sum(1 for a in others if (a < m) != (piv.index(a) < j))
            c = p.coords[index[tuple(sorted(tup))]]
            col.append(-c if inversions % 2 else c)
        cols.append(col)
    # column j restricted to piv rows is p_i * e_j; rescale so the pivot minor equals p_i
    for j in range(1, k):
        cols[j] = [c / p_i for c in cols[j]]
    V = Matrix._wrap(list(zip(*cols)), p.mode)
    back = wedge_encode(V)
    resid = max((sup_abs(a - b) for a, b in zip(back.coords, p.coords)), default=0)
    if p.mode == "exact":
        if resid:
            raise NotDecomposableError("wedge vector is not decomposable")
    elif resid > tol.threshold(scale):
        raise NotDecomposableError(f"re-encode residual {resid:.3e} exceeds tolerance")
    return V


def pairing(w: WedgeVector, v: WedgeVector):
    """Bilinear pairing w^T v (no conjugation)."""
    if (w.n, w.k) != (v.n, v.k):
        raise DomainError("pairing of wedge vectors with different grade or ambient size")
    acc = to_scalar(0, v.mode)
    for a, b in zip(w.coords, v.coords):
        acc = acc + a * b
    return acc
