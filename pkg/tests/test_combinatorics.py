import itertools
from math import comb

import pytest

from eigenwedge import DomainError, IndexSubset, complement, lex_subsets, subset_rank, subset_sign, subset_unrank


def S(*elems, n):
    return IndexSubset(tuple(elems), n)


def test_lex_order_small():
    assert [s.elements for s in lex_subsets(3, 2)] == [(1, 2), (1, 3), (2, 3)]


def test_empty_subset_convention():
    assert [s.elements for s in lex_subsets(5, 0)] == [()]


def test_position_in_four_choose_two():
    subs = lex_subsets(4, 2)
    assert len(subs) == 6
    assert [s.elements for s in subs].index((2, 3)) == 3


def test_rank_and_unrank():
    assert subset_rank(S(1, 2, n=3)) == 0
    assert subset_rank(S(2, 3, n=3)) == 2
    assert subset_unrank(4, 2, 5).elements == (3, 4)


@pytest.mark.parametrize("n", range(0, 8))
def test_rank_is_position(n):
    for k in range(n + 1):
        subs = lex_subsets(n, k)
        assert len(subs) == comb(n, k)
        expected = [tuple(c) for c in itertools.combinations(range(1, n + 1), k)]
        assert [s.elements for s in subs] == expected
        for r, s in enumerate(subs):
            assert subset_rank(s) == r
            assert subset_unrank(n, k, r) == s


def test_signs():
    assert subset_sign(S(1, n=3), S(1, n=3)) == 1
    assert subset_sign(S(1, 2, n=3), S(1, 3, n=3)) == -1
    assert subset_sign(S(2, 3, n=3), S(2, 3, n=3)) == 1


def test_complement():
    assert complement(S(2, 4, n=5)).elements == (1, 3, 5)
    assert S(2, 4, n=5).complement().complement() == S(2, 4, n=5)


@pytest.mark.parametrize("bad", [((2, 1), 3), ((1, 1), 3), ((0, 2), 3), ((1, 4), 3)])
def test_invalid_subsets(bad):
    with pytest.raises(DomainError):
        IndexSubset(*bad)


def test_out_of_range_arguments():
    with pytest.raises(DomainError):
        lex_subsets(3, 4)
    with pytest.raises(DomainError):
        subset_unrank(4, 2, 6)
