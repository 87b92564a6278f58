"""
Structured (JSON) report documents.

Rationals are written as ``{"exact": "p/q", "approx": "0.333333"}``; the
approximation is for reading only and is never parsed back.
"""
import json
import logging
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Any, Dict, List

from ..core.arcs import Arc, ArcSet
from ..core.rational import approx, format_rational, parse_rational
from ..dynamics.lifting import CircleMapPL, PLLifting

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


def rational_entry(q: Fraction) -> Dict[str, str]:
    return {"exact": format_rational(q), "approx": approx(q)}


def to_jsonable(value: Any) -> Any:
    """Recursively turn report values into JSON-safe data."""
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, Fraction):
        return rational_entry(value)
    if isinstance(value, float):
        # least-squares output, already marked approximate by its key
        return round(value, 6)
    if isinstance(value, (Arc, ArcSet, CircleMapPL, PLLifting)):
        return str(value)
    if isinstance(value, dict):
        return {_key(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    if is_dataclass(value):
        return to_jsonable(asdict(value))
    return str(value)


def _key(k: Any) -> str:
    if isinstance(k, Fraction):
        return format_rational(k)
    if isinstance(k, tuple):
        return ",".join(str(_key(v)) for v in k)
    return str(k)


def from_jsonable(value: Any) -> Any:
    """Inverse of the rational encoding; other values come back as stored."""
    if isinstance(value, dict):
        if set(value) == {"exact", "approx"}:
            return parse_rational(value["exact"])
        return {k: from_jsonable(v) for k, v in value.items()}
    if isinstance(value, list):
        return [from_jsonable(v) for v in value]
    return value


def build_document(sections: List[Dict[str, Any]]) -> Dict[str, Any]:
    """One document with sections keyed by command name, in run order."""
    doc: Dict[str, Any] = {"format": FORMAT_VERSION, "sections": {}}
    for section in sections:
        name = section.get("command", "section")
        key, i = name, 2
        while key in doc["sections"]:
            key, i = f"{name}#{i}", i + 1
        doc["sections"][key] = to_jsonable(section)
    return doc


def dumps(sections: List[Dict[str, Any]]) -> str:
    return json.dumps(build_document(sections), indent=2, sort_keys=False) + "\n"


def write_report(path: str, sections: List[Dict[str, Any]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(sections))
    logger.debug("write_report: %d sections to %s", len(sections), path)


def read_report(path: str) -> List[Dict[str, Any]]:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return [from_jsonable(section) for section in doc.get("sections", {}).values()]
