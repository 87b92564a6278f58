"""
Sharkovsky order on N together with 2^infinity.

    3 > 5 > 7 > ... > 2*3 > 2*5 > ... > 4*3 > ... > 2^inf > ... > 4 > 2 > 1
"""
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from ..errors import InputError


@dataclass(frozen=True)
class SharkovskyNumber:
    """A positive integer, or 2^infinity when ``value`` is None."""

    value: Optional[int] = None

    def __post_init__(self):
        if self.value is not None and (isinstance(self.value, bool) or self.value < 1):
            raise InputError(f"Sharkovsky numbers are positive integers, got {self.value!r}")

    @classmethod
    def two_infinity(cls) -> "SharkovskyNumber":
        return cls(None)

    @property
    def is_two_infinity(self) -> bool:
        return self.value is None

    @property
    def rank(self) -> Tuple[int, int, int]:
        """Key whose natural tuple order is the Sharkovsky order."""
        if self.value is None:
            return (1, 0, 0)
        j = (self.value & -self.value).bit_length() - 1
        odd = self.value >> j
        if odd > 1:
            return (2, -j, -odd)
        return (0, j, 0)

    def __str__(self) -> str:
        return "2^inf" if self.value is None else str(self.value)


TWO_INFINITY = SharkovskyNumber.two_infinity()

ShNum = Union[int, SharkovskyNumber]


def _sh(a: ShNum) -> SharkovskyNumber:
    return a if isinstance(a, SharkovskyNumber) else SharkovskyNumber(a)


def sharkovsky_geq(a: ShNum, b: ShNum) -> bool:
    """a is at or above b in the Sharkovsky order."""
    return _sh(a).rank >= _sh(b).rank


def tail_contains(a: ShNum, m: ShNum) -> bool:
    """m belongs to S(a) = {m : a >= m}."""
    return sharkovsky_geq(a, m)


def tail_up_to(a: ShNum, bound: int) -> Tuple[int, ...]:
    """S(a) intersected with {1, ..., bound}."""
    return tuple(m for m in range(1, bound + 1) if tail_contains(a, m))
