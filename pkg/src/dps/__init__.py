"""Shortest curvature-bounded G1 smoothing of polylines with line segments
and minimum-radius arcs, plus a Dubins optimality cross-check and an
obstacle-aware planning pipeline."""

from .geom import (
    ArcSegment,
    DegeneratePointsError,
    Heading,
    LineSegment,
    Point2,
    Pose,
    RigidTransform,
    arc_endpoint,
    arc_length,
    heading_between,
    interior_angle,
    normalize_angle,
    to_standard_setting,
)
from .smoother import (
    FeasibilityError,
    FeasibilityReport,
    PathPiece,
    Polyline,
    SmoothPath,
    TripletSolution,
    ValidationReport,
    check_far_condition,
    check_global_existence,
    check_local_existence,
    deviation_bound,
    extract_pieces,
    feasibility_report,
    path_length,
    polyline_length,
    smooth_polyline,
    smooth_polyline_batch,
    solve_three_points,
    tangent_length,
    validate,
    vertex_solutions,
)
from .dubins import (
    DubinsWord,
    classify_j_type,
    dubins_shortest,
    multipoint_bruteforce,
)
from .planner import (
    Bounds,
    ConvexPolygon,
    NoPathError,
    PlanResult,
    Scenario,
    UnreachableConfigurationError,
    VisibilityGraph,
    build_visibility_graph,
    clearance,
    mitered_inflate,
    plan,
    required_offset,
    shortest_polyline,
)
from .randgen import random_polyline

__version__ = "0.1.0"

__all__ = [
    "ArcSegment",
    "Bounds",
    "ConvexPolygon",
    "DegeneratePointsError",
    "DubinsWord",
    "FeasibilityError",
    "FeasibilityReport",
    "Heading",
    "LineSegment",
    "NoPathError",
    "PathPiece",
    "PlanResult",
    "Point2",
    "Polyline",
    "Pose",
    "RigidTransform",
    "Scenario",
    "SmoothPath",
    "TripletSolution",
    "UnreachableConfigurationError",
    "ValidationReport",
    "VisibilityGraph",
    "arc_endpoint",
    "arc_length",
    "build_visibility_graph",
    "check_far_condition",
    "check_global_existence",
    "check_local_existence",
    "classify_j_type",
    "clearance",
    "deviation_bound",
    "dubins_shortest",
    "extract_pieces",
    "feasibility_report",
    "heading_between",
    "interior_angle",
    "mitered_inflate",
    "multipoint_bruteforce",
    "normalize_angle",
    "path_length",
    "plan",
    "polyline_length",
    "random_polyline",
    "required_offset",
    "shortest_polyline",
    "smooth_polyline",
    "smooth_polyline_batch",
    "solve_three_points",
    "tangent_length",
    "to_standard_setting",
    "validate",
    "vertex_solutions",
]
