"""
Exact rational scalars: strict conversion, the "p/q" literal syntax, display
helpers and best rational approximation of a float by Farey mediants.
"""
import re
from fractions import Fraction
from typing import Any, Tuple

from ..errors import InputError

_LITERAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def as_rational(value: Any, *, name: str = "value") -> Fraction:
    """
    Convert a rational-like input to Fraction, rejecting float/complex/bool.

    Accepted:
      - int
      - Fraction
      - str in the "p/q" literal syntax (q omitted means integer)
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"{name} must be rational, got bool {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value, name=name)
    if isinstance(value, float):
        raise InputError(f"{name} must be rational (int/Fraction/str); float is forbidden: {value!r}")
    if isinstance(value, complex):
        raise InputError(f"{name} must be rational (int/Fraction/str); complex is forbidden: {value!r}")
    raise InputError(f"{name} must be int/Fraction/str, got {type(value).__name__}")


def parse_rational(text: str, *, name: str = "value") -> Fraction:
    """Parse ``p/q`` or an integer literal exactly."""
    match = _LITERAL.match(text)
    if not match:
        raise InputError(f"{name} must be a rational literal like '3/2', got {text!r}")
    numerator, denominator = match.group(1), match.group(2)
    if denominator is not None and int(denominator) == 0:
        raise InputError(f"{name} has zero denominator: {text!r}")
    return Fraction(int(numerator), int(denominator) if denominator else 1)


def format_rational(q: Fraction) -> str:
    """Canonical literal: ``p/q``, or ``p`` for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def approx(q: Fraction, places: int = 6) -> str:
    """Decimal approximation rounded half-up to ``places`` digits (display only)."""
    q = Fraction(q)
    scale = 10 ** places
    scaled = abs(q) * scale
    rounded = int(scaled) + (1 if scaled - int(scaled) >= Fraction(1, 2) else 0)
    sign = "-" if q < 0 and rounded else ""
    whole, frac = divmod(rounded, scale)
    return f"{sign}{whole}.{frac:0{places}d}"


def bit_size(q: Fraction) -> int:
    """Bits needed for numerator and denominator together."""
    return abs(q.numerator).bit_length() + q.denominator.bit_length()


def farey(v: float, lim: int) -> Tuple[int, int]:
    """
    Closest fraction to ``v`` with denominator at most ``lim``, by mediant search.

    Returns:
        (numerator, denominator)
    """
    if v < 0:
        n, d = farey(-v, lim)
        return -n, d
    whole = int(v)
    v = v - whole
    lower, upper = (0, 1), (1, 0)
    while True:
        mediant = (lower[0] + upper[0], lower[1] + upper[1])
        if v * mediant[1] > mediant[0]:
            if lim < mediant[1]:
                return _closer(v, lower, upper, whole)
            lower = mediant
        elif v * mediant[1] == mediant[0]:
            if lim >= mediant[1]:
                return mediant[0] + whole * mediant[1], mediant[1]
            return _closer(v, lower, upper, whole)
        else:
            if lim < mediant[1]:
                return _closer(v, lower, upper, whole)
            upper = mediant


def _closer(v: float, lower: Tuple[int, int], upper: Tuple[int, int], whole: int) -> Tuple[int, int]:
    if upper[1] == 0:
        best = lower
    elif abs(v - lower[0] / lower[1]) <= abs(upper[0] / upper[1] - v):
        best = lower
    else:
        best = upper
    return best[0] + whole * best[1], best[1]


def to_rational(v: float, lim: int = 1000) -> Fraction:
    """Rational approximation of a float with bounded denominator."""
    n, d = farey(v, lim)
    return Fraction(n, d)
