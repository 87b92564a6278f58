"""
Points of the circle [0,1) mod 1, the circle metric and circular ordering.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence, Tuple

from ..errors import DegenerateInput
from .rational import as_rational, format_rational


def mod1(x: Fraction) -> Fraction:
    return x - math.floor(x)


@dataclass(frozen=True, order=True)
class CirclePoint:
    """A point of the circle; construction reduces any rational mod 1."""

    position: Fraction

    def __post_init__(self):
        object.__setattr__(self, "position", mod1(as_rational(self.position, name="position")))

    @classmethod
    def of(cls, value: Any) -> "CirclePoint":
        if isinstance(value, CirclePoint):
            return value
        return cls(as_rational(value, name="point"))

    def __str__(self) -> str:
        return format_rational(self.position)


def circle_metric(a: Any, b: Any) -> Fraction:
    """d(a, b) = |a - b| if that is at most 1/2, else 1 - |a - b|."""
    diff = abs(CirclePoint.of(a).position - CirclePoint.of(b).position)
    return diff if diff <= Fraction(1, 2) else 1 - diff


def circular_order(base: Any, points: Sequence[Any]) -> Tuple[int, ...]:
    """
    Order points counterclockwise starting just after ``base``.

    Args:
        base: Reference point
        points: Pairwise distinct points, all distinct from base

    Returns:
        1-based permutation sigma with base < x_sigma(1) < ... < base + 1
    """
    b = CirclePoint.of(base).position
    lifted = [mod1(CirclePoint.of(p).position - b) for p in points]
    if any(v == 0 for v in lifted):
        raise DegenerateInput("a point coincides with the base point")
    if len(set(lifted)) != len(lifted):
        raise DegenerateInput("points must be pairwise distinct")
    return tuple(i + 1 for i in sorted(range(len(lifted)), key=lifted.__getitem__))
