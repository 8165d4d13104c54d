"""Weighted-tree model and the path/subtree queries everything downstream consumes.

A :class:`WeightedTree` is an undirected, connected, acyclic graph with exact
positive rational edge weights.  Degree-1 vertices are the leaves and carry the
integer labels 1..n (a bijection); internal vertices are unlabeled, may have any
degree >= 2, and degree-2 vertices are tolerated (they are suppressed only when
trees are compared for isomorphism).

Vertex ids are opaque hashables.  The parser and generators use ints for leaves
(the label itself) and short strings for internal vertices; nothing below relies
on ids being orderable, only on the tree's own deterministic vertex order.

All values are immutable after construction and every query is a pure function,
so trees can be shared freely across threads.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from treetrop.rationals import as_exact


class TreeError(ValueError):
    """Malformed tree, unknown label, or invalid subtree reference."""


def _as_weight(w) -> Fraction:
    try:
        q = as_exact(w, "edge weight")
    except ValueError as exc:
        raise TreeError(str(exc)) from None
    if q <= 0:
        raise TreeError(f"nonpositive edge weight {q}")
    return q


class WeightedTree:
    """Immutable weighted tree with labeled leaves.

    Parameters
    ----------
    edges : iterable of (u, v, weight)
        weight must be an exact positive rational (int, Fraction, "a/b", "1.5").
    leaf_labels : mapping {label: vertex}
        labels must be exactly 1..n and hit each degree-1 vertex exactly once.
    """

    def __init__(self, edges, leaf_labels):
        adj: dict = {}
        edge_list = []
        weight_by_key = {}
        for u, v, w in edges:
            if u == v:
                raise TreeError(f"self-loop at vertex {u!r}")
            key = frozenset((u, v))
            if key in weight_by_key:
                raise TreeError(f"duplicate edge {u!r}-{v!r}")
            q = _as_weight(w)
            weight_by_key[key] = q
            adj.setdefault(u, {})[v] = q
            adj.setdefault(v, {})[u] = q
            edge_list.append((u, v, q))
        if not edge_list:
            raise TreeError("a tree needs at least one edge (two labeled leaves)")

        vertices = tuple(adj)
        if len(edge_list) != len(vertices) - 1:
            raise TreeError("edge count is not |V| - 1: not a tree")

        # Connectivity; |E| = |V| - 1 then rules out cycles as well.
        seen = {vertices[0]}
        stack = [vertices[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(vertices):
            raise TreeError("graph is not connected")

        labels = dict(leaf_labels)
        n = len(labels)
        if sorted(labels) != list(range(1, n + 1)):
            raise TreeError(f"leaf labels must be exactly 1..n, got {sorted(labels)}")
        degree_one = {v for v in vertices if len(adj[v]) == 1}
        targets = list(labels.values())
        if len(set(targets)) != len(targets):
            raise TreeError("two labels map to the same vertex")
        for lab, v in labels.items():
            if v not in degree_one:
                raise TreeError(f"label {lab} is not on a degree-1 vertex")
        if set(targets) != degree_one:
            raise TreeError("every degree-1 vertex must carry a label")

        self._adj = adj
        self.vertices = vertices
        self.edges = tuple(edge_list)
        self.n = n
        self._leaf_vertex = {lab: labels[lab] for lab in range(1, n + 1)}
        self._label_of = {v: lab for lab, v in self._leaf_vertex.items()}
        self._weight_by_key = weight_by_key
        self._build_root_scaffold()

    # -- construction helpers -------------------------------------------------

    def _build_root_scaffold(self):
        """Parent/depth/root-distance arrays for O(depth) path queries."""
        root = self.vertices[0]
        parent = {root: None}
        depth = {root: 0}
        dist = {root: Fraction(0)}
        stack = [root]
        while stack:
            x = stack.pop()
            for y, w in self._adj[x].items():
                if y not in parent:
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    dist[y] = dist[x] + w
                    stack.append(y)
        self._parent = parent
        self._depth = depth
        self._rootdist = dist

    # -- basic accessors -------------------------------------------------------

    def degree(self, v) -> int:
        try:
            return len(self._adj[v])
        except KeyError:
            raise TreeError(f"unknown vertex {v!r}") from None

    def neighbors(self, v):
        return tuple(self._adj[v])

    def leaf_vertex(self, label: int):
        try:
            return self._leaf_vertex[label]
        except KeyError:
            raise TreeError(f"unknown leaf label {label!r}") from None

    def label_of(self, vertex):
        return self._label_of.get(vertex)

    def is_leaf(self, vertex) -> bool:
        return vertex in self._label_of

    @property
    def labels(self):
        return tuple(range(1, self.n + 1))

    @property
    def internal_vertices(self):
        return tuple(v for v in self.vertices if v not in self._label_of)

    def edge_weight(self, u, v=None) -> Fraction:
        key = u if v is None else frozenset((u, v))
        try:
            return self._weight_by_key[key]
        except KeyError:
            raise TreeError(f"no such edge {key!r}") from None

    @property
    def total_weight(self) -> Fraction:
        return sum((w for _, _, w in self.edges), Fraction(0))

    def scale(self, factor) -> "WeightedTree":
        """New tree with every edge weight multiplied by a positive rational."""
        f = as_exact(factor, "scale factor")
        if f <= 0:
            raise TreeError(f"scale factor must be positive, got {f}")
        return WeightedTree(
            [(u, v, w * f) for u, v, w in self.edges],
            dict(self._leaf_vertex),
        )

    def __repr__(self):
        return f"<WeightedTree n={self.n} |V|={len(self.vertices)}>"

    # -- path queries ------------------------------------------------------------

    def _lca(self, x, y):
        while x != y:
            if self._depth[x] >= self._depth[y]:
                x = self._parent[x]
            else:
                y = self._parent[y]
        return x

    def _vertex_distance(self, x, y) -> Fraction:
        return self._rootdist[x] + self._rootdist[y] - 2 * self._rootdist[self._lca(x, y)]

    def _vertex_path(self, x, y):
        """Vertices on the unique x..y path, inclusive of both ends."""
        up_x = [x]
        up_y = [y]
        a, b = x, y
        while a != b:
            if self._depth[a] >= self._depth[b]:
                a = self._parent[a]
                up_x.append(a)
            else:
                b = self._parent[b]
                up_y.append(b)
        up_y.pop()  # LCA already at the end of up_x
        return up_x + up_y[::-1]

    def path_weight(self, u: int, v: int) -> Fraction:
        """Total weight of the unique path between leaves u and v; 0 if u == v."""
        x = self.leaf_vertex(u)
        y = self.leaf_vertex(v)
        if x == y:
            return Fraction(0)
        return self._vertex_distance(x, y)

    # -- subtrees -----------------------------------------------------------------

    def steiner_subtree(self, leaves) -> "SubtreeRef":
        """The unique minimal connected subgraph containing the given leaves.

        Computed by pruning: repeatedly strip degree-1 vertices that are not
        targets.  What survives is the union of the pairwise leaf paths.
        """
        targets = {self.leaf_vertex(l) for l in leaves}
        if not targets:
            raise TreeError("need at least one leaf")
        degree = {v: len(self._adj[v]) for v in self.vertices}
        removed = set()
        stack = [v for v in self.vertices if degree[v] == 1 and v not in targets]
        while stack:
            v = stack.pop()
            if v in removed:
                continue
            removed.add(v)
            for u in self._adj[v]:
                if u not in removed:
                    degree[u] -= 1
                    if degree[u] == 1 and u not in targets:
                        stack.append(u)
        alive = frozenset(v for v in self.vertices if v not in removed)
        edges = frozenset(
            key for key in self._weight_by_key if key <= alive
        )
        return SubtreeRef(self, alive, edges)

    def subtree_of_vertices(self, vertices) -> "SubtreeRef":
        """SubtreeRef induced by a connected set of existing vertices."""
        return SubtreeRef.from_vertices(self, vertices)

    def distance_to_subtree(self, label: int, sub: "SubtreeRef") -> "PathToSubtree":
        """Shortest path data from a leaf to a subtree of this tree."""
        if sub.host is not self:
            raise TreeError("subtree is not hosted by this tree")
        return self._vertex_to_subtree(self.leaf_vertex(label), sub)

    def _vertex_to_subtree(self, v, sub: "SubtreeRef") -> "PathToSubtree":
        if v in sub.vertices:
            return PathToSubtree(Fraction(0), v, frozenset())
        best = None
        for x in self.vertices:  # deterministic order; attachment is unique anyway
            if x in sub.vertices:
                d = self._vertex_distance(v, x)
                if best is None or d < best[0]:
                    best = (d, x)
        dist, attach = best
        interior = frozenset(self._vertex_path(v, attach)[1:-1])
        return PathToSubtree(dist, attach, interior)


@dataclass(frozen=True)
class SubtreeRef:
    """A connected subgraph of a host tree (single vertices allowed).

    `vertices` is a frozenset of host vertex ids; `edges` a frozenset of
    frozenset({u, v}) keys into the host's weights.
    """

    host: WeightedTree
    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        if not self.vertices:
            raise TreeError("empty subtree")
        host_vertices = set(self.host.vertices)
        if not self.vertices <= host_vertices:
            raise TreeError("subtree vertex not in host tree")
        if not self.edges <= set(self.host._weight_by_key):
            raise TreeError("subtree edge not in host tree")
        if len(self.edges) != len(self.vertices) - 1:
            raise TreeError("subtree is not connected (edge count mismatch)")
        if len(self.vertices) > 1:
            adj = {v: [] for v in self.vertices}
            for key in self.edges:
                u, v = tuple(key)
                adj[u].append(v)
                adj[v].append(u)
            start = next(iter(self.vertices))
            seen = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != len(self.vertices):
                raise TreeError("subtree is not connected")

    @classmethod
    def from_vertices(cls, host: WeightedTree, vertices) -> "SubtreeRef":
        vs = frozenset(vertices)
        edges = frozenset(key for key in host._weight_by_key if key <= vs)
        return cls(host, vs, edges)

    @classmethod
    def single_vertex(cls, host: WeightedTree, vertex) -> "SubtreeRef":
        return cls(host, frozenset([vertex]), frozenset())

    @property
    def weight(self) -> Fraction:
        """Total edge weight; 0 for a single vertex."""
        return sum((self.host._weight_by_key[k] for k in self.edges), Fraction(0))

    @property
    def is_leaf_free(self) -> bool:
        return not any(self.host.is_leaf(v) for v in self.vertices)

    def vertex_names(self):
        """Deterministic, display-friendly vertex listing."""
        return tuple(sorted((str(v) for v in self.vertices)))


@dataclass(frozen=True)
class PathToSubtree:
    """Shortest path from a vertex to a subtree.

    distance == 0 iff the source already lies in the subtree; `interior` is the
    set of path vertices strictly between the source and the attachment.
    """

    distance: Fraction
    attachment: object
    interior: frozenset


def subtree_weight(sub: SubtreeRef) -> Fraction:
    return sub.weight


# -- isomorphism -------------------------------------------------------------------


def _labels_beyond(tree: WeightedTree, u, v):
    """Leaf labels in the component of v when edge u-v is removed."""
    out = []
    seen = {u, v}
    stack = [v]
    while stack:
        x = stack.pop()
        lab = tree.label_of(x)
        if lab is not None:
            out.append(lab)
        for y in tree._adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return out


def _split_weight_map(tree: WeightedTree) -> dict:
    """Map each leaf split to the total weight of edges inducing it.

    Edges in series (separated only by degree-2 vertices) induce the same
    split, so summing per split performs degree-2 suppression for free.
    Splits are canonicalized as the side NOT containing label 1.
    """
    all_labels = frozenset(range(1, tree.n + 1))
    splits: dict = {}
    for u, v, w in tree.edges:
        side = frozenset(_labels_beyond(tree, u, v))
        if 1 in side:
            side = all_labels - side
        splits[side] = splits.get(side, Fraction(0)) + w
    return splits


def trees_isomorphic(t1: WeightedTree, t2: WeightedTree) -> bool:
    """Label- and weight-preserving isomorphism after degree-2 suppression.

    Two positively weighted trees with the same labeled leaves are isomorphic
    exactly when their weighted split systems coincide.
    """
    if t1.n != t2.n:
        return False
    return _split_weight_map(t1) == _split_weight_map(t2)


# -- random generation -----------------------------------------------------------


def _draw_weight(rng: random.Random, lo: Fraction, hi: Fraction, max_denominator: int) -> Fraction:
    den = rng.randint(1, max_denominator)
    lo_n = math.ceil(lo * den)
    hi_n = math.floor(hi * den)
    if lo_n > hi_n:
        den *= lo.denominator
        lo_n = math.ceil(lo * den)
        hi_n = math.floor(hi * den)
    return Fraction(rng.randint(lo_n, hi_n), den)


def random_tree(n: int, seed: int, weight_range=(1, 10), max_denominator: int = 4) -> WeightedTree:
    """Deterministic random tree: uniform unrooted binary topology, rational weights.

    The topology is grown by sequential leaf attachment (each new leaf
    subdivides a uniformly random edge), which samples unrooted binary leaf
    topologies uniformly.  Weights are rationals in `weight_range` with
    denominator at most `max_denominator`.
    """
    if n < 3:
        raise TreeError(f"need at least 3 leaves, got {n}")
    lo = as_exact(weight_range[0], "weight range")
    hi = as_exact(weight_range[1], "weight range")
    if lo <= 0 or lo > hi:
        raise TreeError(f"invalid weight range [{lo}, {hi}]")
    if max_denominator < 1:
        raise TreeError("max_denominator must be >= 1")
    rng = random.Random(seed)
    topo = [[1, "h1"], [2, "h1"], [3, "h1"]]
    hubs = 1
    for leaf in range(4, n + 1):
        idx = rng.randrange(len(topo))
        u, v = topo[idx]
        hubs += 1
        hub = f"h{hubs}"
        topo[idx] = [u, hub]
        topo.append([hub, v])
        topo.append([leaf, hub])
    edges = [(u, v, _draw_weight(rng, lo, hi, max_denominator)) for u, v in topo]
    return WeightedTree(edges, {i: i for i in range(1, n + 1)})


# -- exhaustive subtree enumeration ------------------------------------------------


def leaf_free_subtrees(tree: WeightedTree) -> list:
    """Every connected subgraph of the internal part of the tree.

    Includes single internal vertices and the whole internal tree.  Exponential
    in the internal vertex count; guarded for the desk scale this library
    targets.
    """
    internal = [v for v in tree.vertices if not tree.is_leaf(v)]
    m = len(internal)
    if m > 16:
        raise TreeError(f"{m} internal vertices: exhaustive enumeration refused")
    out = []
    for mask in range(1, 1 << m):
        vs = [internal[i] for i in range(m) if mask >> i & 1]
        sub_edges = [
            key for key in tree._weight_by_key if key <= set(vs)
        ]
        if len(sub_edges) != len(vs) - 1:
            continue  # not a tree on vs, so not connected
        try:
            out.append(SubtreeRef(tree, frozenset(vs), frozenset(sub_edges)))
        except TreeError:
            continue
    out.sort(key=lambda s: (len(s.vertices), s.vertex_names()))
    return out
