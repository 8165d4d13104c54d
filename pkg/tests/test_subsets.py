"""Colex enumeration and ranking: the indexing contract of every vector type."""

from math import comb

import pytest
from hypothesis import given, strategies as st

from treetrop.subsets import as_subset, colex_rank, iter_k_subsets, k_subsets, pair_rank


def test_pairs_of_four_in_colex_order():
    assert k_subsets(4, 2) == [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]


def test_counts():
    for n in range(0, 8):
        for k in range(0, n + 1):
            assert len(k_subsets(n, k)) == comb(n, k)


@given(st.integers(2, 9), st.integers(1, 9))
def test_rank_is_enumeration_index(n, k):
    if k > n:
        return
    for idx, sub in enumerate(iter_k_subsets(n, k)):
        assert colex_rank(sub) == idx


@given(st.integers(1, 30), st.integers(1, 30))
def test_pair_rank_matches_general_formula(i, j):
    if i == j:
        return
    assert pair_rank(i, j) == colex_rank(tuple(sorted((i, j))))


def test_as_subset_validation():
    assert as_subset([3, 1], 4) == (1, 3)
    with pytest.raises(ValueError):
        as_subset([1, 1], 4)
    with pytest.raises(ValueError):
        as_subset([0, 2], 4)
    with pytest.raises(ValueError):
        as_subset([2, 5], 4)
    with pytest.raises(ValueError):
        as_subset([1, 2], 4, k=3)
