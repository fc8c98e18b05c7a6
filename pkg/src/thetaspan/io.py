"""Reading point sets and writing graphs as JSON, DOT or SVG.

Floats are written with ``repr`` so that coordinates survive a round trip
bit for bit.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .geometry import ConeScheme, PointSet
from .spanners import GraphKind, SpannerGraph


class ParseError(ValueError):
    """Malformed input file; ``line`` is 1-based when known."""

    def __init__(self, path, line: int | None, message: str):
        self.path, self.line = str(path), line
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")


def _fmt(path, fmt: str | None, allowed: tuple[str, ...]) -> str:
    fmt = (fmt or Path(path).suffix.lstrip(".")).lower()
    if fmt not in allowed:
        raise ValueError(f"unsupported format {fmt!r}; expected one of {allowed}")
    return fmt


def _assemble(path, rows: list[tuple[int, int, float, float]]) -> PointSet:
    """``rows`` are ``(line, id, x, y)``; ids must be exactly ``0..n-1``."""
    seen: dict[int, int] = {}
    for line, i, _, _ in rows:
        if i in seen:
            raise ParseError(path, line, f"id {i} already used on line {seen[i]}")
        if not 0 <= i < len(rows):
            raise ParseError(path, line, f"id {i} out of range; ids must be 0..{len(rows) - 1}")
        seen[i] = line
    coords = np.empty((len(rows), 2))
    for _, i, x, y in rows:
        coords[i] = (x, y)
    return PointSet(coords)


def _read_csv(path) -> PointSet:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ParseError(path, 1, "empty file")
        if [h.strip().lower() for h in header] != ["id", "x", "y"]:
            raise ParseError(path, 1, f"expected header 'id,x,y', got {','.join(header)!r}")
        for rec in reader:
            line = reader.line_num
            if not rec or all(not f.strip() for f in rec):
                continue
            if len(rec) != 3:
                raise ParseError(path, line, f"expected 3 fields, got {len(rec)}")
            try:
                i, x, y = int(rec[0]), float(rec[1]), float(rec[2])
            except ValueError as e:
                raise ParseError(path, line, str(e)) from None
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ParseError(path, line, "coordinates must be finite")
            rows.append((line, i, x, y))
    return _assemble(path, rows)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(path, e.lineno, e.msg) from None


def _points_from_json(path, items) -> PointSet:
    if not isinstance(items, list):
        raise ParseError(path, None, "expected a list of points")
    rows = []
    for pos, p in enumerate(items):
        try:
            rows.append((pos + 1, int(p["id"]), float(p["x"]), float(p["y"])))
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(path, None, f"point #{pos}: {e!r}") from None
    return _assemble(path, rows)


def read_points(path, fmt: str | None = None) -> PointSet:
    """Points from CSV (``id,x,y`` with header) or JSON (a list of ``{id, x, y}`` or a graph file)."""
    fmt = _fmt(path, fmt, ("csv", "json"))
    if fmt == "csv":
        return _read_csv(path)
    data = _load_json(path)
    if isinstance(data, dict):
        data = data.get("points")
    return _points_from_json(path, data)


def write_points(points: PointSet, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "x", "y"])
        for p in points:
            w.writerow([p.id, repr(p.x), repr(p.y)])


def graph_to_dict(graph: SpannerGraph) -> dict:
    return {
        "scheme": {"k": graph.scheme.k},
        "kind": graph.kind.value,
        **({"parity": graph.parity} if graph.parity else {}),
        "points": [{"id": p.id, "x": p.x, "y": p.y} for p in graph.points],
        "edges": [e._asdict() for e in graph.edges],
    }


def graph_from_dict(data: dict, path="<graph>") -> SpannerGraph:
    try:
        scheme = ConeScheme(int(data["scheme"]["k"]))
        kind = GraphKind.parse(data["kind"])
        points = _points_from_json(path, data["points"])
        edges = data["edges"]
        cols = {
            "source": np.array([int(e["source"]) for e in edges], dtype=np.int64),
            "target": np.array([int(e["target"]) for e in edges], dtype=np.int64),
            "cone": np.array([int(e["cone"]) for e in edges], dtype=np.int64),
            "length": np.array([float(e["length"]) for e in edges], dtype=np.float64),
            "projection": np.array([float(e["projection"]) for e in edges], dtype=np.float64),
        }
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(path, None, f"bad graph file: {e!r}") from None
    n = len(points)
    for name in ("source", "target"):
        if cols[name].size and (cols[name].min() < 0 or cols[name].max() >= n):
            raise ParseError(path, None, f"edge {name} id out of range")
    return SpannerGraph(scheme, points, kind, cols["source"], cols["target"], cols["cone"],
                        cols["length"], cols["projection"], data.get("parity"))


def read_graph(path) -> SpannerGraph:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError(path, None, "expected a JSON object")
    return graph_from_dict(data, path)


def graph_to_dot(graph: SpannerGraph) -> str:
    lines = [f'digraph "{graph.kind.value}_{graph.scheme.k}" {{']
    for p in graph.points:
        lines.append(f'  {p.id} [pos="{p.x!r},{p.y!r}!"];')
    for e in graph.edges:
        lines.append(f"  {e.source} -> {e.target} [cone={e.cone}, length={e.length!r}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_graph(graph: SpannerGraph, path, fmt: str | None = None) -> None:
    fmt = _fmt(path, fmt, ("json", "dot"))
    text = json.dumps(graph_to_dict(graph), indent=1) + "\n" if fmt == "json" else graph_to_dot(graph)
    Path(path).write_text(text)


def render_svg(graphs, *, panel: float = 360.0, margin: float = 20.0, fan_at: int | None = None) -> str:
    """SVG with one panel per graph, side by side, drawn to a common scale.

    ``fan_at`` overlays the cone rays of that vertex in each panel.
    """
    graphs = [graphs] if isinstance(graphs, SpannerGraph) else list(graphs)
    if not graphs:
        raise ValueError("nothing to draw")
    allc = np.vstack([g.points.coords for g in graphs])
    lo, hi = allc.min(axis=0), allc.max(axis=0)
    span = float(max(hi - lo)) or 1.0
    scale = (panel - 2 * margin) / span
    width, height = panel * len(graphs), panel + 20

    def xy(p, off):
        return off + margin + (p[0] - lo[0]) * scale, 20 + margin + (hi[1] - p[1]) * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
           f'viewBox="0 0 {width:g} {height:g}">']
    for gi, g in enumerate(graphs):
        off = gi * panel
        c = g.points.coords
        out.append(f'<clipPath id="clip{gi}"><rect x="{off:g}" y="0" width="{panel:g}" height="{height:g}"/></clipPath>')
        out.append(f'<g class="panel" id="panel{gi}" clip-path="url(#clip{gi})">')
        out.append(f'<text x="{off + margin:g}" y="16" font-size="12">'
                   f'{escape(g.kind.value)} k={g.scheme.k}</text>')
        if fan_at is not None and 0 <= fan_at < g.n:
            x0, y0 = xy(c[fan_at], off)
            for i in range(g.scheme.k):
                phi = g.scheme.ray_angle(i)
                r = panel
                x1, y1 = x0 + r * math.cos(phi), y0 - r * math.sin(phi)
                out.append(f'<line class="fan" x1="{x0:.3f}" y1="{y0:.3f}" x2="{x1:.3f}" y2="{y1:.3f}" '
                           f'stroke="#bbb" stroke-dasharray="3,3" stroke-width="0.5"/>')
        for s, t in zip(g.sources.tolist(), g.targets.tolist()):
            x0, y0 = xy(c[s], off)
            x1, y1 = xy(c[t], off)
            out.append(f'<line class="edge" x1="{x0:.3f}" y1="{y0:.3f}" x2="{x1:.3f}" y2="{y1:.3f}" '
                       f'stroke="#225" stroke-width="0.8"/>')
        for p in c:
            x0, y0 = xy(p, off)
            out.append(f'<circle class="point" cx="{x0:.3f}" cy="{y0:.3f}" r="2" fill="#c22"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export_svg(graphs, path, **options) -> None:
    Path(path).write_text(render_svg(graphs, **options))
