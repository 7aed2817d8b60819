"""Exact rational helpers and the bit-resolution measure of anchor entries.

Rationals are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator, so every value seen here is canonical.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FormatError, InvalidInputError

__all__ = [
    "Fraction",
    "as_rational",
    "ceil_log2",
    "common_denominator_scale",
    "format_rational",
    "parse_rational",
    "res_matrix",
    "res_rational",
]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are rejected: they would silently smuggle binary rounding into
    an exact pipeline.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InvalidInputError(f"not an exact rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise FormatError(f"invalid rational {text!r}") from None
    if sep and (den.strip().startswith(("-", "+"))):
        raise FormatError(f"denominator must be unsigned in {text!r}")
    if d == 0:
        raise FormatError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_rational(q: Fraction) -> str:
    """``-3/4``, ``2``; the denominator is omitted when it is 1."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def ceil_log2(v: int) -> int:
    """Exact ceil(log2 v) for a positive integer."""
    if v < 1:
        raise InvalidInputError("ceil_log2 needs a positive integer")
    return (v - 1).bit_length()


def res_rational(q, literal: bool = False) -> int:
    """Bits needed for the entry ``a/b``: ceil(max(log2(|a|+1), log2(b+1))).

    With ``literal=True`` the numerator term is log2|a+1| instead, which
    differs only for negative numerators; log2 0 = -inf drops out of the max.
    """
    q = as_rational(q)
    a, b = q.numerator, q.denominator
    top = abs(a + 1) if literal else abs(a) + 1
    bits = ceil_log2(b + 1)
    if top > 0:
        bits = max(bits, ceil_log2(top))
    return bits


def _check_rect(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        raise InvalidInputError("matrix must be non-empty")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise InvalidInputError(f"ragged matrix: row {i + 1} has {len(row)} entries, expected {width}")
    return width


def res_matrix(rows: Sequence[Sequence], literal: bool = False) -> int:
    """Maximum :func:`res_rational` over all entries of a rectangular matrix."""
    _check_rect(rows)
    return max(res_rational(v, literal) for row in rows for v in row)


def common_denominator_scale(rows: Sequence[Sequence]) -> tuple[int, list[list[int]]]:
    """Return ``(D, M)`` with D the lcm of all denominators and M = D*A."""
    _check_rect(rows)
    qs = [[as_rational(v) for v in row] for row in rows]
    D = math.lcm(*(v.denominator for row in qs for v in row))
    return D, [[v.numerator * (D // v.denominator) for v in row] for row in qs]


def squared_norm(vec: Iterable) -> Fraction:
    return sum((as_rational(v) ** 2 for v in vec), Fraction(0))
