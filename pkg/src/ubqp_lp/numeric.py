"""Scalar helpers shared by every module.

Values are kept as :class:`fractions.Fraction` throughout construction. The
solver can run in ``"float"`` mode, in which case the conversion happens once,
at solve time.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

DEFAULT_FLOAT_TOL = 1e-9
# "real" entries are multiples of 2**-20
DYADIC_BITS = 20

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class NumericError(ValueError):
    """Malformed or non-finite number."""


def parse_rational(text) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (decimal integers, q > 0) into a Fraction.

    Plain Python ints are accepted too; floats are not, since they would
    silently smuggle rounding into exact mode.
    """
    if isinstance(text, bool):
        raise NumericError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise NumericError(f"not a rational string: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise NumericError(f"not a rational string: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise NumericError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_fraction(value) -> Fraction:
    """Exact conversion; floats are converted by their binary value."""
    if isinstance(value, float) and not math.isfinite(value):
        raise NumericError(f"non-finite value {value!r}")
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


def to_mode(values: Iterable, mode: str) -> list:
    if mode == EXACT:
        return [as_fraction(v) for v in values]
    if mode == FLOAT:
        return [float(v) for v in values]
    raise ValueError(f"unknown numeric mode {mode!r}")


def dyadic(value, bits: int = DYADIC_BITS) -> Fraction:
    """Round to the nearest multiple of ``2**-bits``."""
    scale = 1 << bits
    return Fraction(round(Fraction(value) * scale), scale)


def is_zero(x: Scalar, tol: float = 0.0) -> bool:
    if tol == 0:
        return x == 0
    return abs(x) <= tol
