"""Plain-text wire formats. All entries are exact; whitespace is free-form.

vector file : header "n r" then C(n,r) rationals in colex order
matrix file : header "r n" then r rows of n rationals
point file  : header "n" then n rationals

Rationals are written "a/b" (or a bare integer), never decimals; "inf" is
accepted only where tropical entries are legal.
"""

from __future__ import annotations

from math import comb

from treetrop.plucker import RationalMatrix
from treetrop.rationals import format_scalar, parse_scalar
from treetrop.tropical import TropicalPlueckerVector


class FormatError(ValueError):
    """Malformed vector/matrix/point file."""


def _tokens(text: str):
    toks = text.split()
    if not toks:
        raise FormatError("empty input")
    return toks


def _int_header(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"bad {what} in header: {token!r}") from None


def read_vector(text: str, allow_infinite: bool = False):
    """Parse a vector file into (n, r, values)."""
    toks = _tokens(text)
    if len(toks) < 2:
        raise FormatError("vector file needs an 'n r' header")
    n = _int_header(toks[0], "n")
    r = _int_header(toks[1], "r")
    if not 1 <= r <= n:
        raise FormatError(f"bad header: need 1 <= r <= n, got n={n} r={r}")
    expected = comb(n, r)
    body = toks[2:]
    if len(body) != expected:
        raise FormatError(
            f"expected {expected} entries for (n,r)=({n},{r}), got {len(body)}"
        )
    try:
        values = tuple(parse_scalar(t, allow_infinite=allow_infinite) for t in body)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return n, r, values


def write_vector(n: int, r: int, values) -> str:
    head = f"{n} {r}\n"
    return head + " ".join(format_scalar(v) for v in values) + "\n"


def read_plucker(text: str) -> TropicalPlueckerVector:
    n, k, values = read_vector(text, allow_infinite=True)
    return TropicalPlueckerVector(n, k, values)


def write_plucker(p: TropicalPlueckerVector) -> str:
    return write_vector(p.n, p.k, p.entries)


def read_matrix(text: str) -> RationalMatrix:
    toks = _tokens(text)
    if len(toks) < 2:
        raise FormatError("matrix file needs an 'r n' header")
    r = _int_header(toks[0], "row count")
    n = _int_header(toks[1], "column count")
    if r < 1 or n < 1:
        raise FormatError(f"bad matrix shape {r}x{n}")
    body = toks[2:]
    if len(body) != r * n:
        raise FormatError(f"expected {r * n} entries for a {r}x{n} matrix, got {len(body)}")
    try:
        flat = [parse_scalar(t) for t in body]
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    rows = tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(r))
    try:
        return RationalMatrix(rows)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_matrix(matrix: RationalMatrix) -> str:
    lines = [f"{matrix.nrows} {matrix.ncols}"]
    for row in matrix.rows:
        lines.append(" ".join(format_scalar(x) for x in row))
    return "\n".join(lines) + "\n"


def read_point(text: str) -> tuple:
    toks = _tokens(text)
    n = _int_header(toks[0], "n")
    if n < 1:
        raise FormatError(f"bad point dimension {n}")
    body = toks[1:]
    if len(body) != n:
        raise FormatError(f"expected {n} coordinates, got {len(body)}")
    try:
        return tuple(parse_scalar(t) for t in body)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_point(coords) -> str:
    coords = tuple(coords)
    return f"{len(coords)}\n" + " ".join(format_scalar(c) for c in coords) + "\n"
