"""
Exception hierarchy shared by every module of the toolkit.
"""
from typing import Any, Dict, Optional


class ToolkitError(RuntimeError):
    """Base class for all toolkit failures."""


class InputError(ToolkitError):
    """A user-supplied value is malformed or out of range."""


class DegenerateInput(InputError):
    """Duplicate points, diagonal pairs, empty covers and similar."""


class InvalidLifting(InputError):
    """A breakpoint table violates the lifting invariants."""


class MapSyntaxError(InputError):
    """Map or cover text could not be parsed."""

    def __init__(self, message: str, *, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class WrongDegree(ToolkitError):
    """The operation is only defined for a specific degree."""


class NoFixedPoint(ToolkitError):
    """A fixed point was required but the map has none."""


class NotZeroEntropy(ToolkitError):
    """An extensibility witness contradicts a zero-entropy precondition."""

    def __init__(self, message: str, *, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class NonStabilizing(ToolkitError):
    """An iterated interval image failed to stabilize within budget."""

    def __init__(self, message: str, *, steps: int):
        super().__init__(message)
        self.steps = steps


class ComplexityBudgetExceeded(ToolkitError):
    """A breakpoint, cover, tuple or candidate cap tripped."""

    def __init__(self, message: str, *, budget: Optional[int] = None,
                 partial: Any = None, analysis: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.budget = budget
        self.partial = partial
        self.analysis: Dict[str, Any] = dict(analysis or {})


class PrecisionBudgetExceeded(ComplexityBudgetExceeded):
    """Rational denominators outgrew the configured bit budget."""
