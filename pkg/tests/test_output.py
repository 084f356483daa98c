"""CSV round-trips and SVG structure."""
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, strategies as st

from darbouxflow import (
    CurveError,
    SGrid,
    Sheet,
    read_csv,
    sheet_from_csv,
    svg_text,
    write_csv,
    write_svg,
)


def _sample_sheet():
    grid = SGrid.from_step(0.0, 2 * math.pi, 0.1)
    s = grid.values()
    return Sheet(grid, np.vstack([np.exp(1j * s), 0.5 * np.exp(-1j * s) + 0.25]))


def test_csv_round_trip_is_bit_identical(tmp_path):
    sheet = _sample_sheet()
    path = tmp_path / "sheet.csv"
    write_csv(path, sheet)
    svals, values = read_csv(path)
    assert np.array_equal(svals, sheet.grid.values())
    assert np.array_equal(values, sheet.values)


def test_csv_header_and_line_endings(tmp_path):
    path = tmp_path / "sheet.csv"
    write_csv(path, _sample_sheet())
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert raw.startswith(b"n,s,x,y\n")
    assert raw.endswith(b"\n")


def test_csv_17_digit_format(tmp_path):
    grid = SGrid(0.0, 0.0, 1.0, 1)
    sheet = Sheet(grid, np.array([[1 / 3 + 0j]]))
    path = tmp_path / "third.csv"
    write_csv(path, sheet)
    assert "0.33333333333333331" in path.read_text()


def test_sheet_from_csv_restores_grid(tmp_path):
    sheet = _sample_sheet()
    path = tmp_path / "sheet.csv"
    write_csv(path, sheet)
    back = sheet_from_csv(path)
    assert back.grid.count == sheet.grid.count
    assert back.grid.h == pytest.approx(sheet.grid.h)
    assert np.array_equal(back.values, sheet.values)
    assert back.tangents is None  # samples only; derivatives fall back to FD


@given(st.lists(st.floats(-1e300, 1e300, allow_nan=False, width=64),
                min_size=2, max_size=8))
def test_csv_floats_survive_verbatim(tmp_path_factory, xs):
    tmp = tmp_path_factory.mktemp("csv")
    grid = SGrid.from_count(0.0, 1.0, len(xs))
    sheet = Sheet(grid, np.asarray(xs, dtype=complex)[None, :])
    path = tmp / "row.csv"
    write_csv(path, sheet)
    _, values = read_csv(path)
    assert np.array_equal(values, sheet.values)


def test_read_csv_rejects_bad_header(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("a,b,c,d\n0,0,1,2\n")
    with pytest.raises(CurveError):
        read_csv(p)


def test_read_csv_rejects_ragged_rows(tmp_path):
    p = tmp_path / "ragged.csv"
    p.write_text("n,s,x,y\n0,0.0,1,0\n0,0.5,1,0\n1,0.0,2,0\n")
    with pytest.raises(CurveError):
        read_csv(p)


def test_read_csv_rejects_mismatched_grids(tmp_path):
    p = tmp_path / "grids.csv"
    p.write_text("n,s,x,y\n0,0.0,1,0\n0,0.5,1,0\n1,0.0,2,0\n1,0.7,2,0\n")
    with pytest.raises(CurveError):
        read_csv(p)


# ------------------------------------------------------------------ svg

def test_svg_is_valid_xml_with_polylines_and_marker():
    s = np.linspace(0.0, 2 * math.pi, 50)
    doc = svg_text([np.exp(1j * s), 2 * np.exp(1j * s)], markers=[1 + 0j])
    root = ET.fromstring(doc)
    assert root.tag.endswith("svg")
    assert root.get("version") == "1.1"
    kids = [child.tag.split("}")[-1] for child in root]
    assert kids.count("polyline") == 2
    assert kids.count("circle") == 1


def test_svg_viewbox_margin():
    square = np.array([0, 1, 1 + 1j, 1j, 0], dtype=complex)
    root = ET.fromstring(svg_text([square]))
    x0, y0, w, h = (float(v) for v in root.get("viewBox").split())
    assert x0 == pytest.approx(-0.05)
    assert y0 == pytest.approx(-0.05)
    assert w == pytest.approx(1.1)
    assert h == pytest.approx(1.1)


def test_svg_color_cycle_and_override():
    s = np.linspace(0.0, 1.0, 5)
    curves = [s + 1j * k for k in range(4)]
    root = ET.fromstring(svg_text(curves))
    strokes = [c.get("stroke") for c in root if c.tag.endswith("polyline")]
    assert strokes == ["red", "blue", "black", "red"]
    root = ET.fromstring(svg_text(curves, colors=["green"] * 4))
    strokes = [c.get("stroke") for c in root if c.tag.endswith("polyline")]
    assert strokes == ["green"] * 4
    with pytest.raises(CurveError):
        svg_text(curves, colors=["green"])


def test_svg_flips_y():
    # the point with the largest imaginary part must get the smallest cy
    curve = np.array([0j, 1j], dtype=complex)
    root = ET.fromstring(svg_text([curve], markers=[0j, 1j]))
    cys = [float(c.get("cy")) for c in root if c.tag.endswith("circle")]
    assert cys[1] < cys[0]


def test_svg_needs_data():
    with pytest.raises(CurveError):
        svg_text([])
    with pytest.raises(CurveError):
        svg_text([np.array([], dtype=complex)])


def test_write_svg_creates_file(tmp_path):
    p = tmp_path / "pic.svg"
    write_svg(p, [np.array([0, 1 + 1j])])
    text = p.read_text()
    assert text.startswith("<svg")
    assert "\r" not in text
