"""Tropical scalar semantics: extremum tests, polynomials, Pluecker vectors.

A tropical scalar is an exact Fraction or the absorbing element INF.  Both the
min and the max convention are supported and every predicate takes the
convention explicitly; the two are tied together by negation duality
(min over v equals -(max over -v), achievers included).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from treetrop.rationals import INF, as_scalar, is_infinite
from treetrop.subsets import colex_rank

MIN = "min"
MAX = "max"
CONVENTIONS = (MIN, MAX)


class AllInfiniteError(ValueError):
    """Every candidate value was the tropical zero; no extremum exists."""


def check_convention(convention: str) -> str:
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be 'min' or 'max', got {convention!r}")
    return convention


@dataclass(frozen=True)
class ExtremumWitness:
    """Outcome of an achieved-at-least-twice test.

    `achievers` are 0-based indices into the original value list; entries that
    were INF can never achieve.
    """

    achieved_twice: bool
    value: object
    achievers: tuple

    def __bool__(self):
        return self.achieved_twice


def extremum_achieved_twice(values, convention: str) -> ExtremumWitness:
    """Extremum of the finite entries and whether it repeats.

    INF entries are dropped before the test; if nothing is left,
    AllInfiniteError is raised.
    """
    check_convention(convention)
    finite = []
    for idx, v in enumerate(values):
        v = as_scalar(v, "tropical value")
        if not is_infinite(v):
            finite.append((idx, v))
    if not finite:
        raise AllInfiniteError("all values are the tropical zero")
    pick = min if convention == MIN else max
    best = pick(v for _, v in finite)
    achievers = tuple(idx for idx, v in finite if v == best)
    return ExtremumWitness(len(achievers) >= 2, best, achievers)


@dataclass(frozen=True)
class TropicalPolynomial:
    """Terms (coefficient, exponent vector); evaluation is extremum of affine forms.

    Coefficients are tropical scalars; exponents are nonnegative ints of a
    fixed arity.  At least one coefficient must be finite.
    """

    arity: int
    terms: tuple

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be >= 0")
        norm = []
        for coeff, expo in self.terms:
            coeff = as_scalar(coeff, "coefficient")
            expo = tuple(int(e) for e in expo)
            if len(expo) != self.arity:
                raise ValueError(
                    f"term exponent {expo} does not match arity {self.arity}"
                )
            if any(e < 0 for e in expo):
                raise ValueError(f"negative exponent in {expo}")
            norm.append((coeff, expo))
        if not norm:
            raise ValueError("a tropical polynomial needs at least one term")
        if all(is_infinite(c) for c, _ in norm):
            raise ValueError("at least one coefficient must be finite")
        object.__setattr__(self, "terms", tuple(norm))


@dataclass(frozen=True)
class TropEvalResult:
    value: object
    achievers: tuple  # 0-based indices into the polynomial's term list
    on_hypersurface: bool


def trop_eval(f: TropicalPolynomial, x, convention: str) -> TropEvalResult:
    """Evaluate the extremum of coeff + exponents . x over the terms of f.

    The point lies on the tropical hypersurface of f exactly when the
    extremum is achieved by at least two terms.
    """
    check_convention(convention)
    point = [as_scalar(v, "coordinate") for v in x]
    if any(is_infinite(v) for v in point):
        raise ValueError("evaluation points must be finite")
    if len(point) != f.arity:
        raise ValueError(f"arity mismatch: polynomial {f.arity}, point {len(point)}")
    term_values = []
    for coeff, expo in f.terms:
        if is_infinite(coeff):
            term_values.append(INF)
        else:
            term_values.append(coeff + sum(e * v for e, v in zip(expo, point)))
    witness = extremum_achieved_twice(term_values, convention)
    return TropEvalResult(witness.value, witness.achievers, witness.achieved_twice)


@dataclass(frozen=True)
class TropicalPlueckerVector:
    """Tropical scalars indexed by the k-subsets of {1..n} in colex order."""

    n: int
    k: int
    entries: tuple

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        norm = tuple(as_scalar(v, "entry") for v in self.entries)
        if len(norm) != comb(self.n, self.k):
            raise ValueError(
                f"expected {comb(self.n, self.k)} entries for (n,k)=({self.n},{self.k}), "
                f"got {len(norm)}"
            )
        object.__setattr__(self, "entries", norm)

    def entry(self, subset):
        sub = tuple(sorted(subset))
        if len(sub) != self.k or len(set(sub)) != self.k:
            raise ValueError(f"not a {self.k}-subset: {subset!r}")
        if sub[0] < 1 or sub[-1] > self.n:
            raise ValueError(f"labels out of range: {subset!r}")
        return self.entries[colex_rank(sub)]

    def __getitem__(self, subset):
        return self.entry(subset)

    @property
    def has_infinite_entry(self) -> bool:
        return any(is_infinite(v) for v in self.entries)
