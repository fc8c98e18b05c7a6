"""Yao, Theta and reverse-filtered cone spanners, with stretch analysis."""

from .analysis import (
    DegreeStats,
    PathWitness,
    StretchReport,
    TheoreticalBound,
    all_pairs_oracle,
    crossing_count,
    degree_stats,
    per_edge_stretch,
    shortest_path,
    spanning_ratio,
    theoretical_bound,
)
from .datasets import PointSetSpec, generate
from .geometry import (
    CanonicalTriangle,
    ConeScheme,
    DegenerateDirectionError,
    DuplicatePointError,
    Point,
    PointSet,
    bisector_projection,
    canonical_triangle,
    cone_index,
    t_function,
    triangle_empty,
)
from .io import ParseError, export_svg, read_graph, read_points, write_graph, write_points
from .spanners import (
    DirectedEdge,
    GraphKind,
    SpannerGraph,
    ThetaFamily,
    build,
    build_half_theta6,
    build_theta,
    build_theta_theta,
    build_yao,
    build_yao_yao,
    reverse_filter,
)

__version__ = "0.1.0"
