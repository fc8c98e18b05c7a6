import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from thetaspan import PointSet, ParseError, build, read_graph, read_points, write_graph, write_points
from thetaspan.io import graph_from_dict, graph_to_dict, graph_to_dot, render_svg

SVG = "{http://www.w3.org/2000/svg}"

coords = arrays(np.float64, st.tuples(st.integers(1, 30), st.just(2)),
                elements=st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False, width=64),
                unique=True)


def distinct(raw):
    raw = np.unique(raw + 0.0, axis=0)
    return PointSet(raw)


@settings(max_examples=40, deadline=None)
@given(coords)
def test_csv_round_trip_is_exact(tmp_path_factory, raw):
    pts = distinct(raw)
    path = tmp_path_factory.mktemp("csv") / "p.csv"
    write_points(pts, path)
    assert np.array_equal(read_points(path).coords, pts.coords)


@settings(max_examples=25, deadline=None)
@given(coords, st.sampled_from(["yao", "theta", "yao-yao", "theta-theta", "half-theta6"]))
def test_graph_json_round_trip(tmp_path_factory, raw, kind):
    pts = distinct(raw)
    g = build(kind, pts, 6 if kind == "half-theta6" else 12)
    path = tmp_path_factory.mktemp("g") / "g.json"
    write_graph(g, path)
    h = read_graph(path)
    assert h.kind is g.kind and h.scheme == g.scheme and h.points == g.points and h.parity == g.parity
    assert h.edges == g.edges
    # the points of a graph file can also be read as a point set
    assert read_points(path) == g.points


def test_dict_round_trip(pts50):
    g = build("theta-theta", pts50, 30)
    assert graph_from_dict(json.loads(json.dumps(graph_to_dict(g)))).edges == g.edges


def test_json_points_list(tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps([{"id": 1, "x": 2.0, "y": 3.0}, {"id": 0, "x": 0.5, "y": -1}]))
    assert read_points(p).coords.tolist() == [[0.5, -1.0], [2.0, 3.0]]


def test_dot_two_points(tmp_path):
    g = build("theta", PointSet([[0, 0], [1, 1]]), 6)
    text = graph_to_dot(g)
    assert text.count("->") == 2
    assert text.count("[pos=") == 2
    write_graph(g, tmp_path / "g.dot")
    assert (tmp_path / "g.dot").read_text() == text


def test_svg_panels_and_fan(tmp_path, pts50):
    graphs = [build(k, pts50, 6) for k in ("yao", "theta", "yao-yao", "theta-theta")]
    root = ET.fromstring(render_svg(graphs, fan_at=0))
    panels = root.findall(f"{SVG}g")
    assert len(panels) == 4 and all(p.get("class") == "panel" for p in panels)
    for g, panel in zip(graphs, panels):
        lines = panel.findall(f"{SVG}line")
        assert sum(l.get("class") == "edge" for l in lines) == len(g)
        assert sum(l.get("class") == "fan" for l in lines) == 6
        assert len(panel.findall(f"{SVG}circle")) == 50
    with pytest.raises(ValueError):
        render_svg([])


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


@pytest.mark.parametrize("text,line", [
    ("id,x,y\n0,0,0\n1,abc,2\n", 3),
    ("id,x,y\n0,0,0\n1,1\n", 3),
    ("id,x,y\n0,0,0\n0,1,1\n", 3),
    ("id,x,y\n0,0,0\n5,1,1\n", 3),
    ("i,x,y\n0,0,0\n", 1),
    ("", 1),
    ("id,x,y\n0,0,inf\n", 2),
])
def test_csv_errors_carry_line_numbers(tmp_path, text, line):
    with pytest.raises(ParseError) as e:
        read_points(write(tmp_path, "p.csv", text))
    assert e.value.line == line
    assert f"p.csv:{line}:" in str(e.value)


def test_json_errors(tmp_path):
    with pytest.raises(ParseError) as e:
        read_points(write(tmp_path, "p.json", '[{"id": 0, "x": 1,\n "y": }]'))
    assert e.value.line == 2
    with pytest.raises(ParseError):
        read_points(write(tmp_path, "q.json", '[{"id": 0, "x": 1}]'))
    with pytest.raises(ParseError):
        read_graph(write(tmp_path, "g.json", "[]"))
    with pytest.raises(ParseError):
        read_graph(write(tmp_path, "h.json", '{"kind": "theta"}'))


def test_graph_edge_ids_checked(tmp_path, pts50):
    d = graph_to_dict(build("theta", pts50, 6))
    d["edges"][0]["target"] = 99
    with pytest.raises(ParseError):
        graph_from_dict(d)


def test_unknown_extension(tmp_path):
    with pytest.raises(ValueError):
        read_points(write(tmp_path, "p.txt", "id,x,y\n"))
    with pytest.raises(ValueError):
        write_graph(build("theta", PointSet([[0, 0], [1, 0]]), 6), tmp_path / "g.xml")
