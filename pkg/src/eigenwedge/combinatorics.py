"""Lexicographically ordered k-subsets of {1, ..., n}.

Subsets are 1-based, ranks are 0-based.  Everything here is pure and cached
where it pays off, since compound and adjugate construction enumerate the
same subset lists over and over.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .errors import DomainError

__all__ = [
    "IndexSubset",
    "lex_subsets",
    "subset_rank",
    "subset_unrank",
    "subset_sign",
    "complement",
]


@dataclass(frozen=True)
class IndexSubset:
    """A strictly increasing tuple of indices drawn from 1..n."""

    elements: tuple[int, ...]
    n: int

    def __post_init__(self):
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if self.n < 0:
            raise DomainError(f"ambient size must be >= 0, got {self.n}")
        prev = 0
        for e in els:
            if not isinstance(e, int) or e <= prev or e > self.n:
                raise DomainError(f"{els} is not a strictly increasing subset of 1..{self.n}")
            prev = e

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, item):
        return item in self.elements

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def rank(self) -> int:
        return subset_rank(self)

    def complement(self) -> "IndexSubset":
        return complement(self)

    def __repr__(self):
        return f"IndexSubset({set(self.elements) or '{}'}, n={self.n})"


def _check_nk(n: int, k: int) -> None:
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")


@lru_cache(maxsize=None)
def _lex_tuples(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    # 0-based; itertools.combinations already emits lexicographic order
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def _lex_subsets_cached(n: int, k: int) -> tuple[IndexSubset, ...]:
    return tuple(IndexSubset(tuple(i + 1 for i in t), n) for t in _lex_tuples(n, k))


def lex_subsets(n: int, k: int) -> list[IndexSubset]:
    """All k-subsets of 1..n in lexicographic order.

    >>> [s.elements for s in lex_subsets(3, 2)]
    [(1, 2), (1, 3), (2, 3)]
    """
    _check_nk(n, k)
    return list(_lex_subsets_cached(n, k))


def subset_rank(s: IndexSubset) -> int:
    """0-based position of ``s`` in ``lex_subsets(s.n, len(s))``."""
    n, k = s.n, len(s)
    r = 0
    prev = 0
    for pos, e in enumerate(s.elements, start=1):
        # count subsets that agree so far but place a smaller value at pos
        for j in range(prev + 1, e):
            r += comb(n - j, k - pos)
        prev = e
    return r


def subset_unrank(n: int, k: int, r: int) -> IndexSubset:
    _check_nk(n, k)
    total = comb(n, k)
    if not 0 <= r < total:
        raise DomainError(f"rank {r} out of range for C({n},{k}) = {total}")
    out = []
    j = 1
    for pos in range(1, k + 1):
        while True:
            block = comb(n - j, k - pos)
            if r < block:
                break
            r -= block
            j += 1
        out.append(j)
        j += 1
    return IndexSubset(tuple(out), n)


def subset_sign(s: IndexSubset, t: IndexSubset) -> int:
    """(-1) ** (sum(s) + sum(t)); the cofactor sign used by adj_k."""
    if len(s) != len(t):
        raise DomainError(f"subset sizes differ: {len(s)} vs {len(t)}")
    return -1 if (sum(s.elements) + sum(t.elements)) % 2 else 1


def complement(s: IndexSubset) -> IndexSubset:
    members = set(s.elements)
    return IndexSubset(tuple(i for i in range(1, s.n + 1) if i not in members), s.n)
