"""Exact scalar plumbing: rational parsing/formatting and the infinite element.

Every quantity in this package is either an exact ``Fraction`` or the single
absorbing element ``INF`` (the additive identity of the min-plus semiring).
Plain floats are rejected everywhere: "extremum achieved twice" is a knife-edge
predicate and cannot be decided with rounding error.
"""

from __future__ import annotations

import math
from fractions import Fraction

INF = float("inf")

_INF_TOKENS = {"inf", "+inf", "infinity", "oo"}


def is_infinite(x) -> bool:
    """True for the tropical zero INF (and nothing else)."""
    return isinstance(x, float) and math.isinf(x) and x > 0


def as_exact(x, what: str = "value") -> Fraction:
    """Coerce `x` to a Fraction, rejecting floats and junk.

    Ints, Fractions, Decimals and strings like "3/4" or "1.25" are accepted;
    binary floats are refused because they smuggle in rounding error.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise ValueError(f"{what} must be exact (int, Fraction, or string), got float {x!r}")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"bad {what}: {x!r}") from exc


def as_scalar(x, what: str = "value"):
    """Coerce to a tropical scalar: an exact Fraction or INF."""
    if is_infinite(x):
        return INF
    return as_exact(x, what)


def parse_scalar(token: str, allow_infinite: bool = False):
    """Parse one whitespace-free token: "a/b", an exact decimal, or "inf"."""
    if token.lower() in _INF_TOKENS:
        if not allow_infinite:
            raise ValueError(f"infinite entry {token!r} not allowed here")
        return INF
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {token!r}") from exc


def format_scalar(x) -> str:
    """Render exactly: "a/b" (or a bare integer), never a decimal; INF as "inf"."""
    if is_infinite(x):
        return "inf"
    return str(Fraction(x))
