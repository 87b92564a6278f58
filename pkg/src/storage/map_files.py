"""
Map-file format: one ``bp <x> <y>`` line per breakpoint of the lifting.

    # name: doubling
    bp 0 0
    bp 1 2

Rationals are integers or ``p/q``. ``#`` starts a comment; a leading
``# name: ...`` comment names the map. The first breakpoint must have x = 0
and the last x = 1.
"""
import logging
import os
from typing import List, Tuple, Union

from ..core.rational import format_rational, parse_rational
from ..dynamics.lifting import CircleMapPL, PLLifting
from ..errors import InputError, MapSyntaxError

logger = logging.getLogger(__name__)

NAME_PREFIX = "name:"


def _column(raw: str, token: str) -> int:
    return raw.find(token) + 1


def parse_map(text: str, name: str = "") -> CircleMapPL:
    """
    Parse map text into an exact circle map.

    Raises:
        MapSyntaxError: malformed line, unparsable rational, or x out of order
        InvalidLifting: table-level violations such as a non-integer degree
    """
    points: List[Tuple] = []
    last_line = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        comment = comment.strip()
        if comment.startswith(NAME_PREFIX) and not points and not name:
            name = comment[len(NAME_PREFIX):].strip()
        line = body.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "bp":
            raise MapSyntaxError(f"expected 'bp', got {parts[0]!r}", line=number, column=_column(raw, parts[0]))
        if len(parts) != 3:
            raise MapSyntaxError(f"expected 'bp <x> <y>', got {len(parts) - 1} values", line=number)
        try:
            x = parse_rational(parts[1], name="x")
        except InputError as e:
            raise MapSyntaxError(str(e), line=number, column=_column(raw, parts[1])) from e
        try:
            y = parse_rational(parts[2], name="y")
        except InputError as e:
            raise MapSyntaxError(str(e), line=number, column=raw.rfind(parts[2]) + 1) from e
        if not points and x != 0:
            raise MapSyntaxError(f"first breakpoint must have x = 0, got {parts[1]}", line=number,
                                 column=_column(raw, parts[1]))
        if points and x <= points[-1][0]:
            raise MapSyntaxError(f"x must increase, got {parts[1]} after {format_rational(points[-1][0])}",
                                 line=number, column=_column(raw, parts[1]))
        points.append((x, y))
        last_line = number
    if not points:
        raise MapSyntaxError("no breakpoints", line=max(1, len(text.splitlines())))
    if points[-1][0] != 1:
        raise MapSyntaxError(f"last breakpoint must have x = 1, got {format_rational(points[-1][0])}", line=last_line)
    f = CircleMapPL(PLLifting.from_points(points), name=name)
    logger.debug("parse_map: %s with %d breakpoints, degree %d", name or "<unnamed>", len(points), f.degree)
    return f


def serialize_map(f: Union[CircleMapPL, PLLifting], name: str = "") -> str:
    """Canonical text for a map; ``parse_map`` reads it back exactly."""
    lifting = f.lifting if isinstance(f, CircleMapPL) else f
    name = name or (f.name if isinstance(f, CircleMapPL) else "")
    lines = [f"# {NAME_PREFIX} {name}"] if name else []
    lines.extend(f"bp {format_rational(x)} {format_rational(y)}" for x, y in lifting.breakpoints)
    return "\n".join(lines) + "\n"


def load_map(path: str) -> CircleMapPL:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    default = os.path.splitext(os.path.basename(path))[0]
    f = parse_map(text)
    return f if f.name else CircleMapPL(f.lifting, name=default)


def save_map(path: str, f: Union[CircleMapPL, PLLifting], name: str = "") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_map(f, name))
