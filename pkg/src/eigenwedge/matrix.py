"""Dense matrices over either scalar kernel, plus determinants, ranks and kernels.

Matrix entries are addressed 0-based (``A[i, j]``) like any Python sequence;
the 1-based convention only applies to :class:`IndexSubset` arguments.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence

from .combinatorics import IndexSubset
from .errors import DomainError, RankError, ShapeError, SizeError, ZeroMatrixError
from .scalars import DEFAULT_TOL, EXACT, FLOAT, MODES, QQi, TolerancePolicy, sup_abs, to_scalar

__all__ = [
    "Matrix",
    "det",
    "submatrix_det",
    "det_laplace",
    "rank",
    "rref",
    "kernel_basis",
    "rank1_factor",
    "inverse",
    "max_residual",
]


class Matrix:
    """Immutable dense m x n matrix tagged with its scalar mode."""

    __slots__ = ("_rows", "mode")

    def __init__(self, rows: Iterable[Iterable], mode: str = EXACT):
        if mode not in MODES:
            raise DomainError(f"unknown mode {mode!r}")
        data = tuple(tuple(to_scalar(x, mode) for x in r) for r in rows)
        if data and any(len(r) != len(data[0]) for r in data):
            raise ShapeError("ragged rows")
        self._rows = data
        self.mode = mode

    @classmethod
    def _wrap(cls, rows, mode: str) -> "Matrix":
        m = object.__new__(cls)
        m._rows = tuple(tuple(r) for r in rows)
        m.mode = mode
        return m

    # -- construction -------------------------------------------------------

    @classmethod
    def identity(cls, n: int, mode: str = EXACT) -> "Matrix":
        one, zero = to_scalar(1, mode), to_scalar(0, mode)
        return cls._wrap([[one if i == j else zero for j in range(n)] for i in range(n)], mode)

    @classmethod
    def zeros(cls, m: int, n: int, mode: str = EXACT) -> "Matrix":
        zero = to_scalar(0, mode)
        return cls._wrap([[zero] * n for _ in range(m)], mode)

    @classmethod
    def diag(cls, values: Sequence, mode: str = EXACT) -> "Matrix":
        vals = [to_scalar(v, mode) for v in values]
        zero = to_scalar(0, mode)
        n = len(vals)
        return cls._wrap([[vals[i] if i == j else zero for j in range(n)] for i in range(n)], mode)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], mode: str = EXACT, n: int | None = None) -> "Matrix":
        cols = [[to_scalar(x, mode) for x in c] for c in columns]
        if not cols:
            return cls._wrap([[] for _ in range(n or 0)], mode)
        return cls._wrap(list(zip(*cols)), mode)

    @classmethod
    def column_vector(cls, values: Sequence, mode: str = EXACT) -> "Matrix":
        return cls._wrap([[to_scalar(v, mode)] for v in values], mode)

    # -- shape and access ---------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0]) if self._rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    def entries(self):
        for r in self._rows:
            yield from r

    def select(self, rows: IndexSubset, cols: IndexSubset) -> "Matrix":
        """Submatrix on 1-based index subsets."""
        if rows.n != self.nrows or cols.n != self.ncols:
            raise ShapeError(f"subsets over {rows.n}x{cols.n} do not fit a {self.nrows}x{self.ncols} matrix")
        return self._wrap([[self._rows[i - 1][j - 1] for j in cols] for i in rows], self.mode)

    def to_mode(self, mode: str) -> "Matrix":
        if mode == self.mode:
            return self
        return Matrix(self._rows, mode)

    # -- arithmetic ---------------------------------------------------------

    def _check_same(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if self.mode != other.mode:
            raise DomainError(f"mixed scalar modes {self.mode} and {other.mode}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return self._wrap([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.mode)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return self._wrap([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.mode)

    def __neg__(self) -> "Matrix":
        return self._wrap([[-a for a in r] for r in self._rows], self.mode)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        zero = to_scalar(0, self.mode)
        cols = other.columns()
        out = []
        for r in self._rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        if not cols:
            out = [[] for _ in self._rows]
        return self._wrap(out, self.mode)

    def scale(self, c) -> "Matrix":
        c = to_scalar(c, self.mode)
        return self._wrap([[c * a for a in r] for r in self._rows], self.mode)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def shift(self, lam) -> "Matrix":
        """``A - lam * I``."""
        if not self.is_square:
            raise ShapeError("shift needs a square matrix")
        lam = to_scalar(lam, self.mode)
        return self._wrap(
            [[a - lam if i == j else a for j, a in enumerate(r)] for i, r in enumerate(self._rows)],
            self.mode,
        )

    @property
    def T(self) -> "Matrix":
        if not self._rows:
            return self._wrap([], self.mode)
        return self._wrap(list(zip(*self._rows)), self.mode)

    def conj(self) -> "Matrix":
        return self._wrap([[a.conjugate() for a in r] for r in self._rows], self.mode)

    @property
    def H(self) -> "Matrix":
        return self.conj().T

    def trace(self):
        if not self.is_square:
            raise ShapeError("trace needs a square matrix")
        acc = to_scalar(0, self.mode)
        for i in range(self.nrows):
            acc = acc + self._rows[i][i]
        return acc

    def max_abs(self) -> float:
        return max((abs(a) for a in self.entries()), default=0.0)

    def is_zero(self, tol: TolerancePolicy = DEFAULT_TOL, scale: float | None = None) -> bool:
        if self.exact:
            return not any(self.entries())
        thr = tol.threshold(self.max_abs() if scale is None else scale)
        return all(abs(a) <= thr for a in self.entries())

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    __hash__ = None

    def __repr__(self):
        from .scalars import format_scalar

        body = "; ".join(", ".join(format_scalar(a) for a in r) for r in self._rows)
        return f"Matrix[{self.mode}]({self.nrows}x{self.ncols}: {body})"


# -- determinants -------------------------------------------------------------


def _det_rows(rows: list[list], exact: bool):
    """Determinant of a square list-of-lists (consumed in place)."""
    n = len(rows)
    if n == 0:
        return QQi(1) if exact else 1 + 0j
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    sign = 1
    if exact:
        # Bareiss fraction-free elimination
        prev = None
        for k in range(n - 1):
            if not rows[k][k]:
                for i in range(k + 1, n):
                    if rows[i][k]:
                        rows[k], rows[i] = rows[i], rows[k]
                        sign = -sign
                        break
                else:
                    return QQi(0)
            pk = rows[k][k]
            rk = rows[k]
            for i in range(k + 1, n):
                ri = rows[i]
                a = ri[k]
                for j in range(k + 1, n):
                    v = ri[j] * pk - a * rk[j]
                    ri[j] = v if prev is None else v / prev
            prev = pk
        d = rows[n - 1][n - 1]
        return d if sign > 0 else -d
    acc = 1 + 0j
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(rows[i][k]))
        if rows[p][k] == 0:
            return 0j
        if p != k:
            rows[k], rows[p] = rows[p], rows[k]
            sign = -sign
        pk = rows[k][k]
        acc *= pk
        rk = rows[k]
        for i in range(k + 1, n):
            f = rows[i][k] / pk
            if f:
                ri = rows[i]
                for j in range(k + 1, n):
                    ri[j] -= f * rk[j]
    return acc if sign > 0 else -acc


def _minor(A: Matrix, rows0: Sequence[int], cols0: Sequence[int]):
    """Determinant of the 0-based row/col selection; no validation."""
    data = A._rows
    return _det_rows([[data[i][j] for j in cols0] for i in rows0], A.exact)


def det(A: Matrix):
    if not A.is_square:
        raise ShapeError(f"determinant of a non-square {A.shape} matrix")
    return _det_rows(A.tolist(), A.exact)


def submatrix_det(A: Matrix, rows: IndexSubset, cols: IndexSubset):
    """Minor of ``A`` on 1-based row and column subsets of equal size >= 1."""
    if len(rows) != len(cols):
        raise DomainError(f"row subset has {len(rows)} elements, column subset {len(cols)}")
    if len(rows) < 1:
        raise DomainError("minor of size 0 requested")
    if rows.n != A.nrows or cols.n != A.ncols:
        raise DomainError(f"index subsets over {rows.n}x{cols.n} do not fit a {A.shape} matrix")
    return _minor(A, [i - 1 for i in rows], [j - 1 for j in cols])


def _perm_sign(p: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


def det_laplace(A: Matrix):
    """Brute-force determinant by full permutation expansion.  Oracle only; n <= 8."""
    if not A.is_square:
        raise DomainError(f"determinant of a non-square {A.shape} matrix")
    n = A.nrows
    if n > 8:
        raise SizeError(f"det_laplace limited to n <= 8, got {n}")
    acc = to_scalar(0, A.mode)
    for p in permutations(range(n)):
        term = to_scalar(_perm_sign(p), A.mode)
        for i in range(n):
            term = term * A[i, p[i]]
            if not term:
                break
        acc = acc + term
    return acc


# -- rank, echelon forms, kernels --------------------------------------------


def rank(A: Matrix, tol: TolerancePolicy = DEFAULT_TOL) -> int:
    """Rank by elimination (complete pivoting for floats)."""
    rows = A.tolist()
    m, n = A.shape
    if A.exact:
        r = 0
        for c in range(n):
            p = next((i for i in range(r, m) if rows[i][c]), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            for i in range(r + 1, m):
                if rows[i][c]:
                    f = rows[i][c] / rows[r][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            r += 1
        return r
    thr = tol.threshold(A.max_abs())
    live_r, live_c = list(range(m)), list(range(n))
    r = 0
    while live_r and live_c:
        pi, pj = max(((i, j) for i in live_r for j in live_c), key=lambda ij: abs(rows[ij[0]][ij[1]]))
        piv = rows[pi][pj]
        if abs(piv) <= thr:
            break
        live_r.remove(pi)
        live_c.remove(pj)
        for i in live_r:
            f = rows[i][pj] / piv
            if f:
                for j in live_c:
                    rows[i][j] -= f * rows[pi][j]
        r += 1
    return r


def rref(A: Matrix, tol: TolerancePolicy = DEFAULT_TOL) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the 0-based pivot columns."""
    rows = A.tolist()
    m, n = A.shape
    thr = 0.0 if A.exact else tol.threshold(A.max_abs())
    zero, one = to_scalar(0, A.mode), to_scalar(1, A.mode)
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        if A.exact:
            p = next((i for i in range(r, m) if rows[i][c]), None)
        else:
            p = max(range(r, m), key=lambda i: abs(rows[i][c]))
            if abs(rows[p][c]) <= thr:
                p = None
        if p is None:
            if not A.exact:
                for i in range(r, m):
                    rows[i][c] = zero
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [a / pv for a in rows[r]]
        rows[r][c] = one
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                rows[i][c] = zero
        pivots.append(c)
        r += 1
    return Matrix._wrap(rows, A.mode), pivots


def kernel_basis(A: Matrix, tol: TolerancePolicy = DEFAULT_TOL) -> Matrix:
    """n x d matrix whose columns span ker A; one standard generator per free column."""
    n = A.ncols
    R, pivots = rref(A, tol)
    zero, one = to_scalar(0, A.mode), to_scalar(1, A.mode)
    free = [c for c in range(n) if c not in pivots]
    cols = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        cols.append(v)
    if not cols:
        return Matrix._wrap([[] for _ in range(n)], A.mode)
    return Matrix._wrap(list(zip(*cols)), A.mode)


def rank1_factor(M: Matrix, tol: TolerancePolicy = DEFAULT_TOL) -> tuple[Matrix, Matrix]:
    """Split a rank-one matrix as ``M = x @ y.T``.

    ``x`` is the column of ``M`` through its largest-magnitude entry and ``y``
    the matching row divided by that entry.
    """
    m, n = M.shape
    scale = M.max_abs()
    if M.exact:
        if not any(M.entries()):
            raise ZeroMatrixError("rank1_factor of the zero matrix")
    elif scale <= tol.absolute_floor:
        raise ZeroMatrixError("rank1_factor of a numerically zero matrix")
    p, q = max(((i, j) for i in range(m) for j in range(n)), key=lambda ij: abs(M[ij]))
    piv = M[p, q]
    x = Matrix._wrap([[M[i, q]] for i in range(m)], M.mode)
    y = Matrix._wrap([[M[p, j] / piv] for j in range(n)], M.mode)
    resid = max_residual(M, x @ y.T)
    if M.exact:
        if resid:
            raise RankError("matrix has rank >= 2")
    elif resid > tol.threshold(scale):
        raise RankError(f"matrix has rank >= 2 (residual {resid:.3e} vs scale {scale:.3e})")
    return x, y


def inverse(A: Matrix, tol: TolerancePolicy = DEFAULT_TOL) -> Matrix:
    """Gauss-Jordan inverse."""
    if not A.is_square:
        raise ShapeError("inverse of a non-square matrix")
    n = A.nrows
    aug = Matrix._wrap([list(r) + list(e) for r, e in zip(A._rows, Matrix.identity(n, A.mode)._rows)], A.mode)
    R, pivots = rref(aug, tol)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise DomainError("matrix is singular")
    return Matrix._wrap([R.row(i)[n:] for i in range(n)], A.mode)


def max_residual(A: Matrix, B: Matrix):
    """Largest entrywise difference; exact mode returns a Fraction, zero iff ``A == B``."""
    if A.shape != B.shape:
        raise ShapeError(f"shapes {A.shape} and {B.shape} differ")
    out = 0
    for a, b in zip(A.entries(), B.entries()):
        d = sup_abs(a - b)
        if d > out:
            out = d
    return out
