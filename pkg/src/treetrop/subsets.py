"""Colexicographic subset machinery shared by all vector-indexed types.

Subsets of {1..n} are sorted tuples of 1-based labels.  Vectors indexed by
k-subsets store their entries in colex order: S < T iff the largest element
where they differ is smaller in S.  The rank of S = {s_1 < ... < s_k} is

    rank(S) = sum_j C(s_j - 1, j)        (0-based rank, j = 1..k)

so entry lookup never needs a table.
"""

from __future__ import annotations

import itertools
from math import comb


def iter_k_subsets(n: int, k: int):
    """Yield the k-subsets of {1..n} as sorted tuples, in colex order."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield ()
        return
    for top in range(k, n + 1):
        for rest in iter_k_subsets(top - 1, k - 1):
            yield rest + (top,)


def k_subsets(n: int, k: int) -> list:
    return list(iter_k_subsets(n, k))


def colex_rank(subset) -> int:
    """0-based colex rank of a sorted tuple of 1-based labels."""
    return sum(comb(s - 1, j + 1) for j, s in enumerate(subset))


def pair_rank(i: int, j: int) -> int:
    """colex_rank({i, j}) without tuple juggling; i != j."""
    if i > j:
        i, j = j, i
    return (j - 1) * (j - 2) // 2 + (i - 1)


def as_subset(values, n: int, k: int | None = None):
    """Validate and canonicalize a subset of {1..n} into a sorted tuple."""
    sub = tuple(sorted(values))
    if len(set(sub)) != len(sub):
        raise ValueError(f"repeated element in subset {values!r}")
    if sub and (sub[0] < 1 or sub[-1] > n):
        raise ValueError(f"subset {values!r} not within 1..{n}")
    if k is not None and len(sub) != k:
        raise ValueError(f"expected a {k}-subset, got {values!r}")
    return sub


def quadruples_with_repeats(n: int):
    """All nondecreasing (i, j, k, l) with entries in 1..n, lexicographically."""
    return itertools.combinations_with_replacement(range(1, n + 1), 4)
