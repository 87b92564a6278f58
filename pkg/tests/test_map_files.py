from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given

from src.dynamics.lifting import CircleMapPL
from src.errors import InvalidLifting, MapSyntaxError
from src.storage.map_files import load_map, parse_map, save_map, serialize_map

from .strategies import circle_maps

F = Fraction

MAPS = Path(__file__).resolve().parent.parent / "maps"

DOUBLING = """\
# name: doubling
bp 0 0   # start
bp 1 2
"""


def test_parse_named_map():
    f = parse_map(DOUBLING)
    assert f.name == "doubling"
    assert f.degree == 2
    assert f(F(3, 4)) == F(1, 2)


def test_serialize_is_canonical():
    f = parse_map("bp 0 2/4\nbp 1/2 1\nbp 1 3/2\n", name="rot")
    assert serialize_map(f) == "# name: rot\nbp 0 1/2\nbp 1/2 1\nbp 1 3/2\n"


@pytest.mark.parametrize("text,line", [
    ("bp 0 0\nxp 1 1\n", 2),
    ("bp 0 0\nbp 1\n", 2),
    ("bp 0 0\nbp 1 1.5\n", 2),
    ("bp 1/2 0\nbp 1 1\n", 1),
    ("bp 0 0\nbp 1/2 1\nbp 1/4 1\nbp 1 1\n", 3),
    ("bp 0 0\nbp 1/2 1\n", 2),
    ("# nothing here\n", 1),
])
def test_syntax_errors_carry_the_line(text, line):
    with pytest.raises(MapSyntaxError) as info:
        parse_map(text)
    assert info.value.line == line


def test_column_points_at_the_bad_token():
    with pytest.raises(MapSyntaxError) as info:
        parse_map("bp 0 0\nbp 1 x\n")
    assert info.value.column == 6


def test_non_integer_degree_is_invalid():
    with pytest.raises(InvalidLifting):
        parse_map("bp 0 0\nbp 1 1/2\n")


def test_load_defaults_name_to_file_stem(tmp_path):
    path = tmp_path / "tent.cmap"
    path.write_text("bp 0 0\nbp 1/2 1\nbp 1 0\n")
    f = load_map(str(path))
    assert f.name == "tent"
    assert f.degree == 0


def test_save_then_load(tmp_path, doubling):
    path = tmp_path / "d.cmap"
    save_map(str(path), doubling)
    assert load_map(str(path)) == doubling
    assert load_map(str(path)).name == "doubling"


def test_shipped_maps_parse():
    assert load_map(str(MAPS / "doubling.cmap")).degree == 2
    assert load_map(str(MAPS / "rotation_third.cmap"))(0) == F(1, 3)
    assert load_map(str(MAPS / "deg1_fixed.cmap")).degree == 1
    assert load_map(str(MAPS / "period_doubling3.cmap")).degree == 0


@given(circle_maps())
def test_parse_reads_back_serialized_maps(f):
    g = parse_map(serialize_map(f))
    assert g == f
    assert isinstance(g, CircleMapPL)
