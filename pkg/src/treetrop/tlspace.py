"""Special points of tree-derived tropical linear spaces and their tightness.

A leaf-free subtree tp of a tree contributes the candidate point whose i-th
coordinate is

    dist(leaf i, tp) + weight(tp) / r

so that each r-coordinate sum carries the subtree weight exactly once.  With
tp a single internal vertex the point is just the leaf-distance vector of that
vertex (the root-depth point when that vertex is picked as root).

Membership is tested two ways: against the inequality system (every r-subset
sum at least the Steiner weight of that subset) and against the standard
circuit test over (k+1)-subsets of a tropical Pluecker vector.  Tightness of an
inequality is compared with a combinatorial prediction: the Steiner tree of
the subset contains tp, and the path interiors from the chosen leaves to tp
are disjoint (pairwise by default; the common-intersection reading is kept
only to document how it mispredicts).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from treetrop.dissim import RDissimilarityMap, steiner_r_map
from treetrop.rationals import as_scalar, format_scalar, is_infinite
from treetrop.subsets import as_subset, iter_k_subsets
from treetrop.tree import SubtreeRef, TreeError, WeightedTree
from treetrop.tropical import (
    AllInfiniteError,
    TropicalPlueckerVector,
    check_convention,
    extremum_achieved_twice,
)

PAIRWISE = "pairwise"
COMMON = "common"
INTERPRETATIONS = (PAIRWISE, COMMON)

ROOT_DEPTH = "root_depth"
NODE = "node"
SUBTREE = "subtree"


@dataclass(frozen=True)
class CandidatePoint:
    """A point of R^n with a record of which tree feature produced it.

    provenance is ("node", vertex), ("root_depth", vertex), or
    ("subtree", SubtreeRef, r).
    """

    n: int
    coords: tuple
    provenance: tuple

    def __post_init__(self):
        coords = tuple(as_scalar(c, "coordinate") for c in self.coords)
        if any(is_infinite(c) for c in coords):
            raise ValueError("candidate point coordinates must be finite")
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @property
    def kind(self) -> str:
        return self.provenance[0]

    def describe(self) -> str:
        if self.kind in (NODE, ROOT_DEPTH):
            return f"{self.kind}={self.provenance[1]}"
        sub = self.provenance[1]
        return f"subtree={','.join(sub.vertex_names())}"


def _leaf_distances(tree: WeightedTree, sub: SubtreeRef) -> tuple:
    return tuple(
        tree.distance_to_subtree(label, sub).distance for label in tree.labels
    )


def root_depth_point(tree: WeightedTree, root) -> CandidatePoint:
    """Leaf-to-root distance vector for a designated internal vertex."""
    if tree.is_leaf(root):
        raise TreeError(f"root {root!r} must be an internal vertex")
    sub = SubtreeRef.single_vertex(tree, root)
    return CandidatePoint(tree.n, _leaf_distances(tree, sub), (ROOT_DEPTH, root))


def subtree_point(tree: WeightedTree, tp: SubtreeRef, r: int) -> CandidatePoint:
    """Candidate point of a leaf-free subtree: dist(i, tp) + weight(tp)/r."""
    if tp.host is not tree:
        raise TreeError("subtree is not hosted by this tree")
    if not tp.is_leaf_free:
        raise TreeError("subtree must not contain a leaf")
    if not 2 <= r <= tree.n:
        raise ValueError(f"need 2 <= r <= n={tree.n}, got r={r}")
    share = tp.weight / r
    coords = tuple(d + share for d in _leaf_distances(tree, tp))
    return CandidatePoint(tree.n, coords, (SUBTREE, tp, r))


def internal_node_points(tree: WeightedTree, r: int) -> list:
    """One point per internal vertex: its leaf-distance vector.

    The returned vectors are pairwise distinct for every tree (for any two
    internal vertices some leaf path to one passes through the other).
    """
    out = []
    for v in tree.internal_vertices:
        sub = SubtreeRef.single_vertex(tree, v)
        out.append(CandidatePoint(tree.n, _leaf_distances(tree, sub), (NODE, v)))
    return out


@dataclass(frozen=True)
class MembershipReport:
    """Slack structure of a point against an r-subset map.

    verdict is true iff every slack (coordinate sum minus map entry) is >= 0;
    tight_sets are the zero-slack subsets in colex order.
    """

    n: int
    r: int
    verdict: bool
    min_slack: Fraction
    tight_sets: tuple
    first_violation: tuple | None

    def __bool__(self):
        return self.verdict

    def as_dict(self):
        return {
            "n": self.n,
            "r": self.r,
            "verdict": self.verdict,
            "min_slack": format_scalar(self.min_slack),
            "tight_sets": [list(s) for s in self.tight_sets],
            "first_violation": list(self.first_violation)
            if self.first_violation
            else None,
        }


def _point_coords(x, n: int) -> tuple:
    coords = x.coords if isinstance(x, CandidatePoint) else tuple(
        as_scalar(c, "coordinate") for c in x
    )
    if any(is_infinite(c) for c in coords):
        raise ValueError("point coordinates must be finite")
    if len(coords) != n:
        raise ValueError(f"dimension mismatch: point has {len(coords)}, need {n}")
    return coords


def inequality_membership(x, dr: RDissimilarityMap) -> MembershipReport:
    """Check every r-subset inequality sum(x over S) >= dr(S), exactly."""
    coords = _point_coords(x, dr.n)
    min_slack = None
    tight = []
    first_violation = None
    for idx, sub in enumerate(iter_k_subsets(dr.n, dr.r)):
        slack = sum(coords[i - 1] for i in sub) - dr.values[idx]
        if min_slack is None or slack < min_slack:
            min_slack = slack
        if slack == 0:
            tight.append(sub)
        elif slack < 0 and first_violation is None:
            first_violation = sub
    return MembershipReport(
        dr.n, dr.r, min_slack >= 0, min_slack, tuple(tight), first_violation
    )


@dataclass(frozen=True)
class CircuitReport:
    verdict: bool
    first_violation: tuple | None  # the (k+1)-subset whose extremum is unique
    term_values: tuple | None

    def __bool__(self):
        return self.verdict

    def as_dict(self):
        return {
            "verdict": self.verdict,
            "first_violation": list(self.first_violation)
            if self.first_violation
            else None,
            "term_values": [format_scalar(v) for v in self.term_values]
            if self.term_values
            else None,
        }


def circuit_membership(
    p: TropicalPlueckerVector, x, convention: str
) -> CircuitReport:
    """Standard circuit test against a tropical Pluecker vector.

    For every (k+1)-subset S the extremum over i in S of p[S - i] + x_i
    (INF entries dropped) must repeat.  Returns the first failing S in colex
    order otherwise.
    """
    check_convention(convention)
    if p.k >= p.n:
        raise ValueError(f"circuit test needs k < n, got (n,k)=({p.n},{p.k})")
    coords = _point_coords(x, p.n)
    for sub in iter_k_subsets(p.n, p.k + 1):
        values = []
        for i in sub:
            rest = tuple(t for t in sub if t != i)
            values.append(p.entry(rest) + coords[i - 1])
        try:
            witness = extremum_achieved_twice(values, convention)
        except AllInfiniteError:
            raise AllInfiniteError(
                f"all circuit terms infinite on subset {sub}"
            ) from None
        if not witness.achieved_twice:
            return CircuitReport(False, sub, tuple(values))
    return CircuitReport(True, None, None)


@dataclass(frozen=True)
class FacetReport:
    """Tightness of one r-subset inequality versus its combinatorial prediction."""

    subset: tuple
    contains_subtree: bool
    interiors: tuple  # per chosen leaf, in subset order
    interiors_disjoint: bool
    predicted_tight: bool
    actual_tight: bool
    slack: Fraction
    interpretation: str

    @property
    def agrees(self) -> bool:
        return self.predicted_tight == self.actual_tight

    def as_dict(self):
        return {
            "subset": list(self.subset),
            "contains_subtree": self.contains_subtree,
            "interiors": [sorted(str(v) for v in s) for s in self.interiors],
            "interiors_disjoint": self.interiors_disjoint,
            "predicted_tight": self.predicted_tight,
            "actual_tight": self.actual_tight,
            "slack": format_scalar(self.slack),
            "interpretation": self.interpretation,
        }


def _interiors_disjoint(interiors, interpretation: str) -> bool:
    if interpretation == PAIRWISE:
        for a in range(len(interiors)):
            for b in range(a + 1, len(interiors)):
                if interiors[a] & interiors[b]:
                    return False
        return True
    if interpretation == COMMON:
        common = interiors[0]
        for s in interiors[1:]:
            common = common & s
        return not common
    raise ValueError(f"interpretation must be 'pairwise' or 'common', got {interpretation!r}")


def facet_condition(
    tree: WeightedTree,
    tp: SubtreeRef,
    r: int,
    subset,
    interpretation: str = PAIRWISE,
    *,
    _point: CandidatePoint | None = None,
    _dr_entry: Fraction | None = None,
    _steiner: SubtreeRef | None = None,
) -> FacetReport:
    """Compare actual tightness of one subset with the combinatorial criterion.

    Predicted tight: the Steiner tree of the subset contains tp AND the
    interiors of the leaf-to-tp paths are disjoint under the chosen
    interpretation.  Actual tight: the subset's inequality slack is zero at
    the subtree point.
    """
    sub = as_subset(subset, tree.n, r)
    point = _point if _point is not None else subtree_point(tree, tp, r)
    steiner = _steiner if _steiner is not None else tree.steiner_subtree(sub)
    contains = tp.vertices <= steiner.vertices and tp.edges <= steiner.edges
    interiors = tuple(
        tree.distance_to_subtree(label, tp).interior for label in sub
    )
    disjoint = _interiors_disjoint(interiors, interpretation)
    dr_entry = _dr_entry if _dr_entry is not None else steiner.weight
    slack = sum(point.coords[i - 1] for i in sub) - dr_entry
    return FacetReport(
        subset=sub,
        contains_subtree=contains,
        interiors=interiors,
        interiors_disjoint=disjoint,
        predicted_tight=contains and disjoint,
        actual_tight=slack == 0,
        slack=slack,
        interpretation=interpretation,
    )


@dataclass(frozen=True)
class FacetScan:
    """Facet reports for every r-subset, plus the aggregate facet verdict."""

    reports: tuple
    on_facet: bool  # some subset is actually tight
    point: CandidatePoint

    @property
    def all_agree(self) -> bool:
        return all(rep.agrees for rep in self.reports)

    def tight_subsets(self):
        return tuple(rep.subset for rep in self.reports if rep.actual_tight)

    def as_dict(self):
        return {
            "on_facet": self.on_facet,
            "all_agree": self.all_agree,
            "point": [format_scalar(c) for c in self.point.coords],
            "reports": [rep.as_dict() for rep in self.reports],
        }


def facet_scan(
    tree: WeightedTree, tp: SubtreeRef, r: int, interpretation: str = PAIRWISE
) -> FacetScan:
    """facet_condition over every r-subset in colex order (shared point and map)."""
    point = subtree_point(tree, tp, r)
    dr = steiner_r_map(tree, r)
    reports = tuple(
        facet_condition(
            tree,
            tp,
            r,
            sub,
            interpretation,
            _point=point,
            _dr_entry=dr.values[idx],
        )
        for idx, sub in enumerate(iter_k_subsets(tree.n, r))
    )
    return FacetScan(reports, any(rep.actual_tight for rep in reports), point)
