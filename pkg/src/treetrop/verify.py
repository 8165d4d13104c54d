"""Seeded batch verification: replay every library-level theorem on random trees.

Each trial draws one random tree and runs the whole pipeline over it:

  four_point            the tree's pairwise map passes the four-point test
  phi_vs_steiner        cyclic-order map equals the Steiner map, entrywise
  reconstruct_roundtrip rebuilt tree is weighted-isomorphic to the original
  dressian_pairs        pairwise map passes all three-term relations (k=2)
  dressian_steiner      r-subset maps pass all three-term relations (k=r)
  node_points_distinct  internal-vertex points are pairwise distinct
  point_membership      node/root/subtree points have all slacks >= 0
  facet_prediction      tightness == (Steiner containment and disjoint interiors)

Circuit-test verdicts of the subtree points against the r=3 vector are counted
under both conventions and reported as information, not asserted.

Identical configs produce byte-identical text reports (timing is opt-in).
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from treetrop.dissim import (
    pairwise_map,
    phi_r,
    reconstruct_tree,
    steiner_r_map,
)
from treetrop.dissim import PHI_MAX_R, four_point_check
from treetrop.newick import serialize_newick
from treetrop.plucker import THREE_TERM, dressian_report
from treetrop.rationals import as_exact, format_scalar
from treetrop.subsets import iter_k_subsets
from treetrop.tlspace import (
    PAIRWISE,
    circuit_membership,
    facet_condition,
    inequality_membership,
    internal_node_points,
    root_depth_point,
    subtree_point,
)
from treetrop.tree import leaf_free_subtrees, random_tree, trees_isomorphic
from treetrop.tropical import CONVENTIONS, MAX, check_convention

CHECK_NAMES = (
    "four_point",
    "phi_vs_steiner",
    "reconstruct_roundtrip",
    "dressian_pairs",
    "dressian_steiner",
    "node_points_distinct",
    "point_membership",
    "facet_prediction",
)

_CIRCUIT_R = 3


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 42
    trials: int = 50
    n_range: tuple = (4, 7)
    r_set: tuple = (2, 3)
    conventions: tuple = (MAX,)
    weight_range: tuple = (Fraction(1), Fraction(10))
    max_denominator: int = 4

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        lo, hi = (int(x) for x in self.n_range)
        if not 3 <= lo <= hi:
            raise ValueError(f"bad leaf-count range [{lo}, {hi}]")
        object.__setattr__(self, "n_range", (lo, hi))
        r_set = tuple(sorted(set(int(r) for r in self.r_set)))
        if not r_set or r_set[0] < 2 or r_set[-1] > PHI_MAX_R:
            raise ValueError(f"r_set must be within 2..{PHI_MAX_R}, got {self.r_set}")
        object.__setattr__(self, "r_set", r_set)
        convs = tuple(check_convention(c) for c in self.conventions)
        if not convs:
            raise ValueError("need at least one convention")
        object.__setattr__(self, "conventions", convs)
        wlo = as_exact(self.weight_range[0], "weight range")
        whi = as_exact(self.weight_range[1], "weight range")
        if wlo <= 0 or wlo > whi:
            raise ValueError(f"invalid weight range [{wlo}, {whi}]")
        object.__setattr__(self, "weight_range", (wlo, whi))
        if self.max_denominator < 1:
            raise ValueError("max_denominator must be >= 1")

    def describe(self) -> str:
        return (
            f"seed={self.seed} trials={self.trials}"
            f" n={self.n_range[0]}..{self.n_range[1]}"
            f" r={','.join(str(r) for r in self.r_set)}"
            f" conventions={','.join(self.conventions)}"
            f" weights={format_scalar(self.weight_range[0])}..{format_scalar(self.weight_range[1])}"
            f" max_denominator={self.max_denominator}"
        )


class VerifyReport:
    """Aggregated results; render_text is byte-stable for a fixed config."""

    def __init__(self, config: VerifyConfig):
        self.config = config
        self.runs = {name: 0 for name in CHECK_NAMES}
        self.failures = {name: 0 for name in CHECK_NAMES}
        self.circuit_counts = {conv: [0, 0] for conv in CONVENTIONS}  # [pass, fail]
        self.first_failure = None
        self.elapsed = None

    @property
    def ok(self) -> bool:
        return all(count == 0 for count in self.failures.values())

    def record(self, check: str, passed: bool, trial: int, tree, **detail):
        self.runs[check] += 1
        if not passed:
            self.failures[check] += 1
            if self.first_failure is None:
                bundle = {"check": check, "trial": trial, "newick": serialize_newick(tree)}
                bundle.update(detail)
                self.first_failure = bundle

    def render_text(self, timing: bool = False) -> str:
        lines = ["treetrop verify", f"config {self.config.describe()}"]
        for name in CHECK_NAMES:
            lines.append(
                f"check {name} runs={self.runs[name]} failures={self.failures[name]}"
            )
        for conv in CONVENTIONS:
            ok_count, bad = self.circuit_counts[conv]
            lines.append(
                f"info circuit r={_CIRCUIT_R} convention={conv} pass={ok_count} fail={bad}"
            )
        if self.first_failure is not None:
            parts = " ".join(f"{k}={v}" for k, v in self.first_failure.items())
            lines.append(f"failure {parts}")
        lines.append(f"result {'PASS' if self.ok else 'FAIL'}")
        if timing and self.elapsed is not None:
            lines.append(f"timing seconds={self.elapsed:.3f}")
        return "\n".join(lines) + "\n"

    def as_dict(self, timing: bool = False):
        out = {
            "config": {
                "seed": self.config.seed,
                "trials": self.config.trials,
                "n_range": list(self.config.n_range),
                "r_set": list(self.config.r_set),
                "conventions": list(self.config.conventions),
                "weight_range": [format_scalar(w) for w in self.config.weight_range],
                "max_denominator": self.config.max_denominator,
            },
            "checks": [
                {"name": name, "runs": self.runs[name], "failures": self.failures[name]}
                for name in CHECK_NAMES
            ],
            "circuit_info": [
                {
                    "r": _CIRCUIT_R,
                    "convention": conv,
                    "pass": self.circuit_counts[conv][0],
                    "fail": self.circuit_counts[conv][1],
                }
                for conv in CONVENTIONS
            ],
            "first_failure": self.first_failure,
            "ok": self.ok,
        }
        if timing and self.elapsed is not None:
            out["timing_seconds"] = round(self.elapsed, 3)
        return out

    def render_json(self, timing: bool = False) -> str:
        return json.dumps(self.as_dict(timing=timing), indent=2) + "\n"


def _subtree_spec(tp) -> str:
    return ",".join(tp.vertex_names())


def run_verify(cfg: VerifyConfig) -> VerifyReport:
    """Execute all checks over cfg.trials random trees; failures are data, not errors."""
    started = time.monotonic()
    rng = random.Random(cfg.seed)
    report = VerifyReport(cfg)

    for trial in range(cfg.trials):
        n = rng.randint(*cfg.n_range)
        tree_seed = rng.getrandbits(63)
        tree = random_tree(n, tree_seed, cfg.weight_range, cfg.max_denominator)
        d = pairwise_map(tree)

        fp = four_point_check(d)
        report.record(
            "four_point",
            fp.passed,
            trial,
            tree,
            witness=fp.witness,
        )

        feasible_r = [r for r in cfg.r_set if r <= n]
        steiner_maps = {}
        for r in feasible_r:
            steiner_maps[r] = steiner_r_map(tree, r)
            same = phi_r(d, r).values == steiner_maps[r].values
            report.record("phi_vs_steiner", same, trial, tree, r=r)

        rebuilt = reconstruct_tree(d)
        report.record(
            "reconstruct_roundtrip", trees_isomorphic(rebuilt, tree), trial, tree
        )

        if n >= 4:
            for conv in cfg.conventions:
                rep = dressian_report(d.to_plucker(), THREE_TERM, conv)
                fail_rel = rep.first_failure
                report.record(
                    "dressian_pairs",
                    rep.all_pass,
                    trial,
                    tree,
                    convention=conv,
                    subset=None if fail_rel is None else fail_rel.exchange_indices,
                )

        for r in feasible_r:
            if r < 3 or n < r + 2:
                continue
            vec = steiner_maps[r].to_plucker()
            for conv in cfg.conventions:
                rep = dressian_report(vec, THREE_TERM, conv)
                fail_rel = rep.first_failure
                report.record(
                    "dressian_steiner",
                    rep.all_pass,
                    trial,
                    tree,
                    r=r,
                    convention=conv,
                    subset=None if fail_rel is None else fail_rel.exchange_indices,
                )

        node_points = internal_node_points(tree, feasible_r[0] if feasible_r else 2)
        distinct = len({pt.coords for pt in node_points}) == len(node_points)
        report.record("node_points_distinct", distinct, trial, tree)

        subtrees = leaf_free_subtrees(tree)
        root_point = root_depth_point(tree, tree.internal_vertices[0])
        for r in feasible_r:
            dr = steiner_maps[r]
            candidates = [root_point]
            candidates.extend(node_points)
            candidates.extend(subtree_point(tree, tp, r) for tp in subtrees)
            for pt in candidates:
                verdict = inequality_membership(pt, dr).verdict
                report.record(
                    "point_membership",
                    verdict,
                    trial,
                    tree,
                    r=r,
                    point=pt.describe(),
                )

        for r in feasible_r:
            dr = steiner_maps[r]
            steiner_refs = {
                sub: tree.steiner_subtree(sub) for sub in iter_k_subsets(n, r)
            }
            for tp in subtrees:
                point = subtree_point(tree, tp, r)
                agree = True
                bad_subset = None
                for idx, sub in enumerate(iter_k_subsets(n, r)):
                    rep = facet_condition(
                        tree,
                        tp,
                        r,
                        sub,
                        PAIRWISE,
                        _point=point,
                        _dr_entry=dr.values[idx],
                        _steiner=steiner_refs[sub],
                    )
                    if not rep.agrees:
                        agree = False
                        bad_subset = sub
                        break
                report.record(
                    "facet_prediction",
                    agree,
                    trial,
                    tree,
                    r=r,
                    subtree=_subtree_spec(tp),
                    subset=bad_subset,
                )

        if _CIRCUIT_R in feasible_r and _CIRCUIT_R < n:
            vec = steiner_maps[_CIRCUIT_R].to_plucker()
            for tp in subtrees:
                point = subtree_point(tree, tp, _CIRCUIT_R)
                for conv in CONVENTIONS:
                    verdict = circuit_membership(vec, point, conv).verdict
                    report.circuit_counts[conv][0 if verdict else 1] += 1

    report.elapsed = time.monotonic() - started
    return report
