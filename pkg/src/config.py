"""
Budgets and default tolerances, with CDYN_ environment overrides.
"""
import os
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional, Tuple

from .errors import InputError

try:
    import psutil
except Exception:  # optional at runtime
    psutil = None


def _default_threads() -> int:
    if psutil is None:
        return 1
    return psutil.cpu_count(logical=False) or 1


@dataclass(frozen=True)
class Budgets:
    max_breakpoints: int = 10 ** 6
    cover_element_cap: int = 40
    tuple_cap: int = 10 ** 6
    pattern_cap: int = 20
    candidate_cap: int = 400
    stabilization_steps: int = 10 ** 4
    precision_bits: int = 4096
    extensibility_horizon: int = 8
    shadow_delta: Fraction = Fraction(1, 10 ** 4)
    shadow_tail: int = 10 ** 4
    radii: Tuple[Fraction, ...] = (Fraction(1, 8), Fraction(1, 32), Fraction(1, 128))
    poly_threshold: Fraction = Fraction(3, 2)
    farey_denominator: int = 1000
    threads: int = field(default_factory=_default_threads)
    progress: bool = False

    def with_overrides(self, **overrides: Any) -> "Budgets":
        """Copy with the given fields replaced; ``None`` values are ignored."""
        clean = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **{k: _coerce(k, v) for k, v in clean.items()})

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Budgets":
        """Build budgets from defaults overridden by ``CDYN_<FIELD>`` variables."""
        environ = os.environ if environ is None else environ
        overrides: Dict[str, Any] = {}
        for f in fields(cls):
            for key in _env_names(f.name):
                if key in environ:
                    overrides[f.name] = environ[key]
                    break
        return cls().with_overrides(**overrides)


# flag-style aliases accepted alongside the field names
_ALIASES = {
    "max_breakpoints": ("CDYN_BUDGET_BREAKPOINTS",),
    "extensibility_horizon": ("CDYN_HORIZON",),
}


def _env_names(name: str) -> Tuple[str, ...]:
    return (f"CDYN_{name.upper()}",) + _ALIASES.get(name, ())


def _coerce(name: str, value: Any) -> Any:
    kind = {f.name: f.type for f in fields(Budgets)}[name]
    try:
        if name == "radii":
            if isinstance(value, str):
                return tuple(Fraction(part.strip()) for part in value.split(",") if part.strip())
            return tuple(Fraction(v) for v in value)
        if name == "progress":
            if isinstance(value, str):
                return value.strip().lower() in ("1", "true", "yes", "on")
            return bool(value)
        if kind is Fraction:
            if isinstance(value, float):
                raise InputError(f"{name} must be rational, float is forbidden: {value!r}")
            return Fraction(value)
        return int(value)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad value for {name}: {value!r}") from e


DEFAULT_BUDGETS = Budgets()
