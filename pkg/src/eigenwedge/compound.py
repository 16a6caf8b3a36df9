"""Compound matrices C_k(A), higher adjugates adj_k(A) and related identities.

Orientation of adj_k: entry ``(rank(I), rank(J))`` is
``(-1)**(sum(I) + sum(J))`` times the minor of A on rows ``J^c`` and columns
``I^c``.  With this choice ``adj_1`` is the classical adjugate and

    C_k(A) @ adj_k(A) == adj_k(A) @ C_k(A) == det(A) * I

(first power of det A for every k; checked against brute-force Laplace
expansion in the test suite).  Conjugation by the signed complement map
H = complement_sign_matrix(n, k) gives

    adj_k(A) == H @ C_{n-k}(A.T) @ H.T

For k = 1, H equals C_1(D) = D, D = delta_matrix(n); for k = n - 1 it equals
C_k(D) up to an overall sign.  In both cases
adj_k(A) == C_k(D) @ C_{n-k}(A.T) @ C_k(D).T.  For 2 <= k <= n - 2 no
placement of C_k(D) works: C_k(D) maps k-subsets to k-subsets, not to their
complements.
"""

from __future__ import annotations

from math import comb

from .combinatorics import _lex_tuples
from .errors import DomainError, ShapeError
from .matrix import Matrix, _minor, det
from .scalars import to_scalar

__all__ = [
    "compound",
    "higher_adjugate",
    "adjugate_trace",
    "delta_matrix",
    "complement_sign_matrix",
    "adjugate_by_conjugation",
    "det_sum",
]


def compound(A: Matrix, k: int) -> Matrix:
    """k-th compound: all k x k minors, rows and columns in lex subset order."""
    m, n = A.shape
    if k == 0:
        return Matrix.identity(1, A.mode)
    if not 1 <= k <= min(m, n):
        raise DomainError(f"compound order {k} outside 0..{min(m, n)}")
    rsets, csets = _lex_tuples(m, k), _lex_tuples(n, k)
    return Matrix._wrap([[_minor(A, r, c) for c in csets] for r in rsets], A.mode)


def _complements(n: int, k: int):
    full = set(range(n))
    return [tuple(sorted(full.difference(t))) for t in _lex_tuples(n, k)]


def higher_adjugate(A: Matrix, k: int) -> Matrix:
    """k-th adjugate, an (n choose k) square matrix of signed complementary minors.

    ``adj_0(A) = [det A]`` and ``adj_n(A) = [1]`` by convention.
    """
    if not A.is_square:
        raise ShapeError(f"adjugate of a non-square {A.shape} matrix")
    n = A.nrows
    if not 0 <= k <= n:
        raise DomainError(f"adjugate order {k} outside 0..{n}")
    if k == 0:
        return Matrix._wrap([[det(A)]], A.mode)
    if k == n:
        return Matrix.identity(1, A.mode)
    subsets = _lex_tuples(n, k)
    comps = _complements(n, k)
    # 0-based sums shift the exponent by 2k, which leaves the parity alone
    parity = [sum(t) % 2 for t in subsets]
    rows = []
    for a, ca in enumerate(comps):
        row = []
        for b, cb in enumerate(comps):
            d = _minor(A, cb, ca)
            row.append(-d if parity[a] ^ parity[b] else d)
        rows.append(row)
    return Matrix._wrap(rows, A.mode)


def adjugate_trace(A: Matrix, k: int):
    """tr adj_k(A): the sum of principal (n - k)-minors, without building adj_k."""
    if not A.is_square:
        raise ShapeError("adjugate of a non-square matrix")
    n = A.nrows
    if not 0 <= k <= n:
        raise DomainError(f"adjugate order {k} outside 0..{n}")
    if k == n:
        return to_scalar(1, A.mode)
    acc = to_scalar(0, A.mode)
    for c in _lex_tuples(n, n - k):
        acc = acc + _minor(A, c, c)
    return acc


def delta_matrix(n: int, mode: str = "exact") -> Matrix:
    """Signed antidiagonal: entry (i, j) is (-1)**i when i == n - j + 1 (1-based)."""
    if n < 1:
        raise DomainError(f"delta_matrix needs n >= 1, got {n}")
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        rows[i - 1][n - i] = (-1) ** i
    return Matrix(rows, mode)


def complement_sign_matrix(n: int, k: int, mode: str = "exact") -> Matrix:
    """Rows: k-subsets I; columns: (n-k)-subsets; entry (I, I^c) is (-1)**sum(I)."""
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    col_of = {t: j for j, t in enumerate(_lex_tuples(n, n - k))}
    size = comb(n, k)
    rows = [[0] * size for _ in range(size)]
    for i, (t, c) in enumerate(zip(_lex_tuples(n, k), _complements(n, k))):
        rows[i][col_of[c]] = -1 if (sum(t) + k) % 2 else 1
    return Matrix(rows, mode)


def adjugate_by_conjugation(A: Matrix, k: int) -> Matrix:
    """adj_k(A) rebuilt as H @ C_{n-k}(A.T) @ H.T; an independent route to :func:`higher_adjugate`."""
    if not A.is_square:
        raise ShapeError("adjugate of a non-square matrix")
    n = A.nrows
    if not 1 <= k <= n - 1:
        raise DomainError(f"conjugation form needs 1 <= k <= n-1, got k={k}, n={n}")
    H = complement_sign_matrix(n, k, A.mode)
    return H @ compound(A.T, n - k) @ H.T


def det_sum(A: Matrix, B: Matrix):
    """det(A + B) as sum over k of tr(adj_k(A) @ C_k(B))."""
    if not (A.is_square and B.is_square) or A.shape != B.shape:
        raise DomainError(f"det_sum needs equal square shapes, got {A.shape} and {B.shape}")
    if A.mode != B.mode:
        raise DomainError("mixed scalar modes")
    n = A.nrows
    acc = to_scalar(0, A.mode)
    for k in range(n + 1):
        adj = higher_adjugate(A, k)
        ck = compound(B, k) if k else Matrix.identity(1, A.mode)
        size = comb(n, k)
        for i in range(size):
            ri = adj.row(i)
            for j in range(size):
                if ri[j]:
                    acc = acc + ri[j] * ck[j, i]
    return acc

