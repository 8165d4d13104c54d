"""Dissimilarity maps on leaf pairs and r-subsets, and exact tree reconstruction.

The two central objects:

* the pairwise map of a tree (path length between each pair of leaves), and
* its r-subset generalization (weight of the smallest subtree spanning each
  r-subset), computable either directly from the tree or from the pairwise map
  alone by minimizing half the closed-tour length over cyclic orders.

Keeping both routes independent is the point: their entrywise equality is one
of the main verification targets of this package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from treetrop.rationals import as_exact
from treetrop.subsets import colex_rank, iter_k_subsets, pair_rank, quadruples_with_repeats
from treetrop.tree import WeightedTree
from treetrop.tropical import TropicalPlueckerVector

# Cyclic enumeration visits (r-1)!/2 orders per subset; beyond this use the
# Steiner route instead.
PHI_MAX_R = 8


class NotAdditiveError(ValueError):
    """The map fails the four-point condition; carries the first witness."""

    def __init__(self, witness, sums):
        self.witness = witness
        self.sums = sums
        super().__init__(
            f"not an additive metric: quadruple {witness} has pairing sums {sums}"
        )


class NonpositiveEdgeError(ValueError):
    """The map is additive but forces a zero or negative branch length."""


@dataclass(frozen=True)
class DissimilarityMap:
    """Exact nonnegative values on the 2-subsets of {1..n}, colex order."""

    n: int
    values: tuple

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        vals = tuple(as_exact(v, "dissimilarity entry") for v in self.values)
        if len(vals) != comb(self.n, 2):
            raise ValueError(
                f"expected {comb(self.n, 2)} entries for n={self.n}, got {len(vals)}"
            )
        if any(v < 0 for v in vals):
            raise ValueError("dissimilarity entries must be >= 0")
        object.__setattr__(self, "values", vals)

    def value(self, i: int, j: int) -> Fraction:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"labels out of range: ({i}, {j})")
        if i == j:
            return Fraction(0)
        return self.values[pair_rank(i, j)]

    def __getitem__(self, pair) -> Fraction:
        i, j = pair
        return self.value(i, j)

    def scaled(self, factor) -> "DissimilarityMap":
        f = as_exact(factor, "scale factor")
        return DissimilarityMap(self.n, tuple(v * f for v in self.values))

    def as_matrix(self) -> list:
        """(n+1)x(n+1) nested list with zero diagonal, for hot loops."""
        zero = Fraction(0)
        mat = [[zero] * (self.n + 1) for _ in range(self.n + 1)]
        idx = 0
        for j in range(2, self.n + 1):
            for i in range(1, j):
                mat[i][j] = mat[j][i] = self.values[idx]
                idx += 1
        return mat

    def to_plucker(self) -> TropicalPlueckerVector:
        return TropicalPlueckerVector(self.n, 2, self.values)


@dataclass(frozen=True)
class RDissimilarityMap:
    """Exact nonnegative values on the r-subsets of {1..n}, colex order."""

    n: int
    r: int
    values: tuple

    def __post_init__(self):
        if not 2 <= self.r <= self.n:
            raise ValueError(f"need 2 <= r <= n, got r={self.r}, n={self.n}")
        vals = tuple(as_exact(v, "dissimilarity entry") for v in self.values)
        if len(vals) != comb(self.n, self.r):
            raise ValueError(
                f"expected {comb(self.n, self.r)} entries, got {len(vals)}"
            )
        if any(v < 0 for v in vals):
            raise ValueError("dissimilarity entries must be >= 0")
        object.__setattr__(self, "values", vals)

    def value(self, subset) -> Fraction:
        sub = tuple(sorted(subset))
        if len(sub) != self.r or len(set(sub)) != self.r:
            raise ValueError(f"not an {self.r}-subset: {subset!r}")
        if sub[0] < 1 or sub[-1] > self.n:
            raise ValueError(f"labels out of range: {subset!r}")
        return self.values[colex_rank(sub)]

    def __getitem__(self, subset) -> Fraction:
        return self.value(subset)

    def to_plucker(self) -> TropicalPlueckerVector:
        return TropicalPlueckerVector(self.n, self.r, self.values)


def pairwise_map(tree: WeightedTree) -> DissimilarityMap:
    """Path length between every pair of leaves, as a colex vector."""
    vals = [tree.path_weight(i, j) for i, j in iter_k_subsets(tree.n, 2)]
    return DissimilarityMap(tree.n, tuple(vals))


@dataclass(frozen=True)
class FourPointResult:
    passed: bool
    witness: tuple | None  # first violating (i,j,k,l), i<=j<=k<=l, lexicographic
    sums: tuple | None  # the three pairing sums at the witness

    def __bool__(self):
        return self.passed

    def as_dict(self):
        from treetrop.rationals import format_scalar

        return {
            "passed": self.passed,
            "witness": list(self.witness) if self.witness else None,
            "sums": [format_scalar(s) for s in self.sums] if self.sums else None,
        }


def four_point_check(d: DissimilarityMap) -> FourPointResult:
    """Does the maximum of the three pairing sums repeat, for every quadruple?

    Quadruples run over all i <= j <= k <= l including repeats (a repeated
    index reduces the condition to a triangle inequality).  On failure the
    lexicographically first violating quadruple is reported.
    """
    mat = d.as_matrix()
    for i, j, k, l in quadruples_with_repeats(d.n):
        s1 = mat[i][j] + mat[k][l]
        s2 = mat[i][k] + mat[j][l]
        s3 = mat[i][l] + mat[j][k]
        top = max(s1, s2, s3)
        if (s1 == top) + (s2 == top) + (s3 == top) < 2:
            return FourPointResult(False, (i, j, k, l), (s1, s2, s3))
    return FourPointResult(True, None, None)


def steiner_r_map(tree: WeightedTree, r: int) -> RDissimilarityMap:
    """r-subset map computed the literal way: weight of each Steiner subtree.

    This is the oracle route; the cyclic-order route lives in phi_r.
    """
    if not 2 <= r <= tree.n:
        raise ValueError(f"need 2 <= r <= n={tree.n}, got r={r}")
    vals = [
        tree.steiner_subtree(sub).weight for sub in iter_k_subsets(tree.n, r)
    ]
    return RDissimilarityMap(tree.n, r, tuple(vals))


def _min_half_tour(mat, subset) -> Fraction:
    """Minimum over cyclic orders of half the closed-tour length through `subset`.

    The first element is fixed as anchor and reversals are identified (valid
    because the map is symmetric), leaving (r-1)!/2 cyclic classes.  `mat` is
    the matrix form of the pairwise map.
    """
    first, rest = subset[0], subset[1:]
    best = None
    for perm in itertools.permutations(rest):
        if len(perm) > 1 and perm[0] > perm[-1]:
            continue  # the reversed tour has the same length
        row = mat[first]
        tour = row[perm[0]] + row[perm[-1]]
        prev = perm[0]
        for x in perm[1:]:
            tour += mat[prev][x]
            prev = x
        if best is None or tour < best:
            best = tour
    return best / 2


def phi_r(d: DissimilarityMap, r: int) -> RDissimilarityMap:
    """r-subset map computed from pairwise values alone via cyclic tours.

    For r == 2 this is the pairwise map itself.  For tree-induced maps the
    result agrees entrywise with steiner_r_map; that equality is an acceptance
    property, not an assumption.
    """
    if not 2 <= r <= d.n:
        raise ValueError(f"need 2 <= r <= n={d.n}, got r={r}")
    if r > PHI_MAX_R:
        raise ValueError(
            f"r={r} exceeds the cyclic-enumeration cap {PHI_MAX_R} "
            f"({factorial(r - 1) // 2} orders per subset); use steiner_r_map"
        )
    if r == 2:
        return RDissimilarityMap(d.n, 2, d.values)
    mat = d.as_matrix()
    vals = [_min_half_tour(mat, sub) for sub in iter_k_subsets(d.n, r)]
    return RDissimilarityMap(d.n, r, tuple(vals))


# -- reconstruction ---------------------------------------------------------------


def reconstruct_tree(d: DissimilarityMap) -> WeightedTree:
    """Rebuild the unique positively weighted tree realizing an additive map.

    Leaves are inserted one at a time.  For the next leaf k and any placed
    pair (i, j), half of d(i,k) + d(j,k) - d(i,j) is the exact distance from k
    to the i..j path; minimizing it over pairs locates the attachment point,
    which is then found by walking the path with exact arithmetic.

    Raises NotAdditiveError (with the four-point witness) if the map does not
    come from a tree, and NonpositiveEdgeError if it does only with a zero or
    negative branch.
    """
    check = four_point_check(d)
    if not check.passed:
        raise NotAdditiveError(check.witness, check.sums)
    n = d.n

    if d.value(1, 2) <= 0:
        raise NonpositiveEdgeError("leaves 1 and 2 are at distance 0")
    adj = {1: {2: d.value(1, 2)}, 2: {1: d.value(1, 2)}}
    placed = [1, 2]
    hubs = 0

    def vertex_path(a, b):
        parent = {a: None}
        stack = [a]
        while stack:
            x = stack.pop()
            if x == b:
                break
            for y in adj[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        path = [b]
        while path[-1] != a:
            path.append(parent[path[-1]])
        return path[::-1]

    for k in range(3, n + 1):
        pendant = None
        for i, j in itertools.combinations(placed, 2):
            g = (d.value(i, k) + d.value(j, k) - d.value(i, j)) / 2
            if pendant is None or g < pendant[0]:
                pendant = (g, i, j)
        h, i, j = pendant
        if h <= 0:
            raise NonpositiveEdgeError(
                f"leaf {k} attaches to the tree with pendant length {h}"
            )
        alpha = (d.value(i, k) + d.value(i, j) - d.value(j, k)) / 2
        path = vertex_path(i, j)
        acc = Fraction(0)
        attach = None
        for idx in range(len(path) - 1):
            if acc == alpha:
                attach = path[idx]
                break
            u, v = path[idx], path[idx + 1]
            w = adj[u][v]
            if acc + w > alpha:
                hubs += 1
                mid = f"r{hubs}"
                beta = alpha - acc
                del adj[u][v]
                del adj[v][u]
                adj[u][mid] = beta
                adj.setdefault(mid, {})[u] = beta
                adj[mid][v] = w - beta
                adj[v][mid] = w - beta
                attach = mid
                break
            acc += w
        if attach is None:
            attach = path[-1]
        if isinstance(attach, int):
            # Attachment lands exactly on a placed leaf, which would force that
            # leaf onto the inside of the tree (a zero pendant edge).
            raise NonpositiveEdgeError(
                f"leaf {k} attaches exactly at leaf {attach}"
            )
        adj[attach][k] = h
        adj.setdefault(k, {})[attach] = h
        placed.append(k)

    edges = []
    done = set()
    for u in adj:
        for v, w in adj[u].items():
            key = frozenset((u, v))
            if key not in done:
                done.add(key)
                edges.append((u, v, w))
    return WeightedTree(edges, {i: i for i in range(1, n + 1)})
