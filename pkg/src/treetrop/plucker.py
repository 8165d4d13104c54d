"""Quadratic Pluecker relations: generation, tropical checks, exact minors.

Two relation families are generated:

* QUADRATIC: one relation per pair of index sequences (a (k-1)-subset and a
  (k+1)-subset).  Term a pairs the (k-1)-sequence extended by the a-th element
  of the (k+1)-sequence with the (k+1)-sequence minus that element, signed
  (-1)^a.  Terms whose extended subset repeats an index are dropped (their
  classical coefficient is zero); surviving subsets are sorted, multiplying
  the sign by the sort permutation's sign.
* THREE_TERM: the classical three-term exchange family.  For a (k-2)-subset S
  and i<j<k<l disjoint from S, the terms are (S+ij, S+kl), (S+ik, S+jl),
  (S+il, S+jk) with signs +,-,+.

A tropical vector satisfies a relation when the extremum of the term values
(sum of the two entries, signs ignored) is achieved at least twice; a rational
vector satisfies it classically when the signed sum of products vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from treetrop.rationals import as_exact, is_infinite
from treetrop.subsets import colex_rank, iter_k_subsets
from treetrop.tropical import (
    TropicalPlueckerVector,
    check_convention,
    extremum_achieved_twice,
)

THREE_TERM = "three-term"
QUADRATIC = "quadratic"
FAMILIES = (THREE_TERM, QUADRATIC)


class RankDeficientError(ValueError):
    """A matrix required to have full row rank does not."""


@dataclass(frozen=True)
class PlueckerRelation:
    """One quadratic relation on the k-subsets of {1..n}.

    `terms` is a tuple of (sign, subset_a, subset_b) with sorted k-subsets;
    `i_seq`/`j_seq` are the generating (k-1)- and (k+1)-sequences.
    """

    n: int
    k: int
    i_seq: tuple
    j_seq: tuple
    terms: tuple

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a relation needs at least one surviving term")
        for sign, sub_a, sub_b in self.terms:
            if sign not in (1, -1):
                raise ValueError(f"bad sign {sign!r}")
            for sub in (sub_a, sub_b):
                if len(sub) != self.k or len(set(sub)) != self.k:
                    raise ValueError(f"term subset {sub} is not a {self.k}-subset")

    @property
    def exchange_indices(self) -> tuple:
        """Indices appearing in exactly one of the two sequences.

        For a three-term relation this is the exchanged quadruple i<j<k<l.
        """
        return tuple(sorted(set(self.i_seq) ^ set(self.j_seq)))

    def term_pairs(self):
        return tuple((a, b) for _, a, b in self.terms)


def generate_plucker_relations(n: int, k: int, family: str) -> list:
    """All relations of the family for (n, k), deterministically ordered."""
    if family == QUADRATIC:
        if not 1 <= k < n:
            raise ValueError(f"quadratic relations need 1 <= k < n, got ({n}, {k})")
        relations = []
        for i_seq in iter_k_subsets(n, k - 1):
            i_set = set(i_seq)
            for j_seq in iter_k_subsets(n, k + 1):
                terms = []
                for a, j_a in enumerate(j_seq, start=1):
                    if j_a in i_set:
                        continue  # repeated index: classical coefficient 0
                    sign = -1 if a % 2 else 1
                    if sum(1 for i in i_seq if i > j_a) % 2:
                        sign = -sign
                    sub_a = tuple(sorted(i_seq + (j_a,)))
                    sub_b = tuple(x for x in j_seq if x != j_a)
                    terms.append((sign, sub_a, sub_b))
                relations.append(PlueckerRelation(n, k, i_seq, j_seq, tuple(terms)))
        return relations

    if family == THREE_TERM:
        if k < 2 or k > n:
            raise ValueError(f"three-term relations need 2 <= k <= n, got ({n}, {k})")
        # With n < k + 2 there is no room for an exchange quadruple: the
        # family is empty and every vector satisfies it vacuously.
        relations = []
        for s_set in iter_k_subsets(n, k - 2):
            rest = [x for x in range(1, n + 1) if x not in s_set]
            for picks in iter_k_subsets(len(rest), 4):
                i, j, kk, ll = (rest[p - 1] for p in picks)
                terms = (
                    (1, tuple(sorted(s_set + (i, j))), tuple(sorted(s_set + (kk, ll)))),
                    (-1, tuple(sorted(s_set + (i, kk))), tuple(sorted(s_set + (j, ll)))),
                    (1, tuple(sorted(s_set + (i, ll))), tuple(sorted(s_set + (j, kk)))),
                )
                i_seq = tuple(sorted(s_set + (i,)))
                j_seq = tuple(sorted(s_set + (j, kk, ll)))
                relations.append(PlueckerRelation(n, k, i_seq, j_seq, terms))
        return relations

    raise ValueError(f"unknown relation family {family!r}")


@dataclass(frozen=True)
class RelationCheck:
    passed: bool
    term_values: tuple
    achievers: tuple

    def __bool__(self):
        return self.passed


def trop_relation_check(
    p: TropicalPlueckerVector, rel: PlueckerRelation, convention: str
) -> RelationCheck:
    """Tropical vanishing of one relation: extremum of term values repeats.

    Term values are entry sums (tropical products); signs play no role.  A
    relation whose every term is the tropical zero vanishes vacuously.
    """
    check_convention(convention)
    if (p.n, p.k) != (rel.n, rel.k):
        raise ValueError(
            f"dimension mismatch: vector is ({p.n},{p.k}), relation is ({rel.n},{rel.k})"
        )
    values = tuple(p.entry(a) + p.entry(b) for _, a, b in rel.terms)
    if all(is_infinite(v) for v in values):
        return RelationCheck(True, values, ())
    witness = extremum_achieved_twice(values, convention)
    return RelationCheck(witness.achieved_twice, values, witness.achievers)


@dataclass(frozen=True)
class DressianReport:
    """Pass/fail of every relation in a family against one tropical vector."""

    n: int
    k: int
    family: str
    convention: str
    relations: tuple
    passes: tuple

    @property
    def all_pass(self) -> bool:
        return all(self.passes)

    @property
    def failure_count(self) -> int:
        return sum(1 for ok in self.passes if not ok)

    @property
    def first_failure(self):
        """The first failing relation, or None."""
        for rel, ok in zip(self.relations, self.passes):
            if not ok:
                return rel
        return None

    def as_dict(self):
        first = self.first_failure
        return {
            "n": self.n,
            "k": self.k,
            "family": self.family,
            "convention": self.convention,
            "relations": len(self.relations),
            "failures": self.failure_count,
            "all_pass": self.all_pass,
            "first_failure": None
            if first is None
            else {
                "i_seq": list(first.i_seq),
                "j_seq": list(first.j_seq),
                "exchange_indices": list(first.exchange_indices),
            },
        }


def dressian_report(
    p: TropicalPlueckerVector, family: str, convention: str
) -> DressianReport:
    """Run every generated relation of the family against p, in order."""
    relations = generate_plucker_relations(p.n, p.k, family)
    passes = tuple(
        trop_relation_check(p, rel, convention).passed for rel in relations
    )
    return DressianReport(p.n, p.k, family, convention, tuple(relations), passes)


# -- exact linear algebra -----------------------------------------------------------


@dataclass(frozen=True)
class RationalMatrix:
    """Dense exact rational matrix with nrows <= ncols."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(
            tuple(as_exact(x, "matrix entry") for x in row) for row in self.rows
        )
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        if len(rows) > width:
            raise ValueError(
                f"need nrows <= ncols for minor extraction, got {len(rows)}x{width}"
            )
        object.__setattr__(self, "rows", rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])


def _det_bareiss(rows) -> Fraction:
    """Fraction-free (Bareiss) determinant; every division below is exact."""
    m = [list(r) for r in rows]
    size = len(m)
    sign = 1
    prev = Fraction(1)
    for col in range(size - 1):
        if m[col][col] == 0:
            for i in range(col + 1, size):
                if m[i][col] != 0:
                    m[col], m[i] = m[i], m[col]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = m[col][col]
        for i in range(col + 1, size):
            row_i = m[i]
            row_c = m[col]
            head = row_i[col]
            for j in range(col + 1, size):
                row_i[j] = (row_i[j] * pivot - head * row_c[j]) / prev
            row_i[col] = Fraction(0)
        prev = pivot
    return sign * m[-1][-1]


def pluecker_minors(matrix: RationalMatrix) -> tuple:
    """All maximal minors, indexed by column k-subsets in colex order (k = nrows)."""
    k = matrix.nrows
    out = []
    for cols in iter_k_subsets(matrix.ncols, k):
        sub = [[row[c - 1] for c in cols] for row in matrix.rows]
        out.append(_det_bareiss(sub))
    return tuple(out)


def classical_relation_check(values, rel: PlueckerRelation) -> bool:
    """Does the signed sum of entry products vanish exactly?"""
    vals = tuple(as_exact(v, "entry") for v in values)
    if len(vals) != comb(rel.n, rel.k):
        raise ValueError(
            f"dimension mismatch: expected {comb(rel.n, rel.k)} entries, got {len(vals)}"
        )
    total = Fraction(0)
    for sign, sub_a, sub_b in rel.terms:
        total += sign * vals[colex_rank(sub_a)] * vals[colex_rank(sub_b)]
    return total == 0


def same_rowspace_check(m1: RationalMatrix, m2: RationalMatrix) -> bool:
    """Row-space equality via minor proportionality.

    Both matrices must be full row rank (some maximal minor nonzero), else
    RankDeficientError.  True exactly when one minor vector is a nonzero
    rational multiple of the other.
    """
    if (m1.nrows, m1.ncols) != (m2.nrows, m2.ncols):
        raise ValueError("matrices must have equal shapes")
    p1 = pluecker_minors(m1)
    p2 = pluecker_minors(m2)
    if all(x == 0 for x in p1) or all(x == 0 for x in p2):
        raise RankDeficientError("matrix does not have full row rank")
    pivot = next(i for i, x in enumerate(p2) if x != 0)
    if p1[pivot] == 0:
        return False
    ratio = p1[pivot] / p2[pivot]
    return all(x == ratio * y for x, y in zip(p1, p2))
