"""Polyline smoothing with line segments and minimum-radius circular arcs.

Each interior vertex of a polyline is replaced by the arc of the radius-r
circle tangent to its two incident segments; straight pieces connect
consecutive tangent points. The construction keeps G1 continuity, respects
the curvature bound 1/r, is never longer than the polyline, and runs in
time linear in the number of vertices because every vertex is solved
independently of the others.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .geom import (
    COLLINEAR_EPSILON,
    LENGTH_EPSILON,
    ArcSegment,
    DegeneratePointsError,
    Heading,
    LineSegment,
    Point2,
    Pose,
    arc_endpoint,
    dist,
    interior_angle,
    is_collinear,
    normalize_angle,
    point_arc_distance,
    point_segment_distance,
)

Segment = Union[LineSegment, ArcSegment]


class FeasibilityError(ValueError):
    """Smoothing refused: the polyline cannot hold the required tangent points."""

    def __init__(self, message: str, report: "FeasibilityReport | None" = None):
        super().__init__(message)
        self.report = report


def check_turn_radius(r: float) -> float:
    if not (r > 0.0 and math.isfinite(r)):
        raise ValueError(f"turning radius must be positive and finite, got {r}")
    return r


@dataclass(frozen=True, slots=True)
class Polyline:
    """Ordered sequence of at least two points with distinct neighbors."""

    points: tuple[Point2, ...]

    def __init__(self, points: Sequence[Point2]):
        pts = tuple(points)
        if len(pts) < 2:
            raise ValueError(f"polyline needs at least 2 points, got {len(pts)}")
        for i in range(len(pts) - 1):
            if dist(pts[i], pts[i + 1]) <= LENGTH_EPSILON:
                raise DegeneratePointsError(f"polyline points {i} and {i + 1} coincide")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def length(self) -> float:
        pts = self.points
        return sum(dist(pts[i], pts[i + 1]) for i in range(len(pts) - 1))


def polyline_length(p: Polyline) -> float:
    return p.length()


@dataclass(frozen=True, slots=True)
class TripletSolution:
    """Tangent construction for one interior vertex.

    q1/q2 are the entry/exit tangent points, ``center`` the arc center,
    ``l`` the tangent length r/tan(alpha/2), ``d`` the vertex-to-center
    distance r/sin(alpha/2), ``alpha`` the interior angle, ``sweep`` the
    signed turn angle (|sweep| = pi - alpha, positive = left turn) and
    ``deviation`` the closest approach d - r of the arc to the vertex.
    """

    q1: Point2
    q2: Point2
    center: Point2
    l: float
    d: float
    alpha: float
    sweep: float
    deviation: float


@dataclass(frozen=True, slots=True)
class SmoothPath:
    """Alternating line/arc sequence; consecutive lines may only occur across
    a collinear pass-through vertex."""

    segments: tuple[Segment, ...]
    start_point: Point2
    end_point: Point2


@dataclass(frozen=True, slots=True)
class FeasibilityReport:
    """Per-vertex and per-edge feasibility flags for a polyline.

    ``local_ok[j]``: the tangent length r/tan(alpha_j/2) fits on both edges
    at vertex j. ``global_ok[e]``: edge e is long enough to hold the tangent
    points of both its vertices without overlap. ``far_ok[e]``: the exit
    tangent point after the edge's second vertex is at least 4r from its
    first vertex (None until computable). All flags true means the smoothed
    path exists and is the shortest curvature-bounded G1 path.
    """

    local_ok: tuple[bool, ...]
    global_ok: tuple[bool, ...]
    far_ok: Optional[tuple[bool, ...]] = None

    @property
    def feasible(self) -> bool:
        return all(self.local_ok) and all(self.global_ok)

    @property
    def guaranteed_optimal(self) -> bool:
        return self.feasible and self.far_ok is not None and all(self.far_ok)

    @property
    def local_violations(self) -> list[int]:
        return [i for i, ok in enumerate(self.local_ok) if not ok]

    @property
    def global_violations(self) -> list[int]:
        return [i for i, ok in enumerate(self.global_ok) if not ok]

    @property
    def far_violations(self) -> list[int]:
        return [] if self.far_ok is None else [i for i, ok in enumerate(self.far_ok) if not ok]


@dataclass(frozen=True, slots=True)
class ValidationIssue:
    index: int
    kind: str
    value: float


@dataclass(frozen=True, slots=True)
class ValidationReport:
    ok: bool
    issues: tuple[ValidationIssue, ...]


def tangent_length(alpha: float, r: float) -> float:
    """Tangent length r/tan(alpha/2) cut off each edge at a vertex of
    interior angle alpha."""
    check_turn_radius(r)
    if not 0.0 < alpha < math.pi:
        raise ValueError(f"interior angle must lie in (0, pi), got {alpha}")
    return r / math.tan(0.5 * alpha)


def deviation_bound(alpha: float, r: float) -> float:
    """Closest approach r*(1/sin(alpha/2) - 1) of the smoothing arc to the
    bypassed vertex."""
    check_turn_radius(r)
    if not 0.0 < alpha < math.pi:
        raise ValueError(f"interior angle must lie in (0, pi), got {alpha}")
    return r * (1.0 / math.sin(0.5 * alpha) - 1.0)


def _solve_raw(xi, yi, xm, ym, xf, yf, r):
    """Tangent solve on raw coordinates.

    Returns None for a collinear pass-through vertex, otherwise the tuple
    (q1x, q1y, q2x, q2y, cx, cy, l, d, alpha, sweep); an exact reversal is
    reported with l = inf so the edge check rejects it.
    """
    v1x = xm - xi
    v1y = ym - yi
    v2x = xf - xm
    v2y = yf - ym
    n1 = math.hypot(v1x, v1y)
    n2 = math.hypot(v2x, v2y)
    crs = v1x * v2y - v1y * v2x
    dt = v1x * v2x + v1y * v2y
    if abs(crs) <= COLLINEAR_EPSILON * n1 * n2 and dt > 0.0:
        return None
    denom = dt + n1 * n2
    if denom == 0.0:
        return xm, ym, xm, ym, xm, ym, math.inf, math.inf, 0.0, math.pi
    sweep = math.atan2(crs, dt)
    alpha = math.pi - abs(sweep)
    l = r * abs(crs) / denom
    u1x = v1x / n1
    u1y = v1y / n1
    u2x = v2x / n2
    u2y = v2y / n2
    q1x = xm - l * u1x
    q1y = ym - l * u1y
    q2x = xm + l * u2x
    q2y = ym + l * u2y
    if sweep > 0.0:
        cx = q1x - r * u1y
        cy = q1y + r * u1x
    else:
        cx = q1x + r * u1y
        cy = q1y - r * u1x
    d = math.hypot(xm - cx, ym - cy)
    return q1x, q1y, q2x, q2y, cx, cy, l, d, alpha, sweep


def solve_three_points(p_i: Point2, p_m: Point2, p_f: Point2, r: float) -> Optional[TripletSolution]:
    """Solve the three-point sub-problem at vertex p_m.

    Returns None when the points are collinear within tolerance (the caller
    emits a straight pass-through) and raises FeasibilityError when the
    tangent length does not fit on the incident edges.
    """
    check_turn_radius(r)
    if dist(p_i, p_m) <= LENGTH_EPSILON or dist(p_m, p_f) <= LENGTH_EPSILON:
        raise DegeneratePointsError("triplet points must be pairwise distinct")
    raw = _solve_raw(p_i.x, p_i.y, p_m.x, p_m.y, p_f.x, p_f.y, r)
    if raw is None:
        return None
    q1x, q1y, q2x, q2y, cx, cy, l, d, alpha, sweep = raw
    if l > min(dist(p_i, p_m), dist(p_m, p_f)):
        raise FeasibilityError(
            f"tangent length {l:.6g} exceeds an incident edge at ({p_m.x:g}, {p_m.y:g})"
        )
    return TripletSolution(
        q1=Point2(q1x, q1y),
        q2=Point2(q2x, q2y),
        center=Point2(cx, cy),
        l=l,
        d=d,
        alpha=alpha,
        sweep=sweep,
        deviation=d - r,
    )


def check_local_existence(p_i: Point2, p_m: Point2, p_f: Point2, r: float) -> bool:
    """Per-vertex tangent-fit condition min(|p_m-p_i|, |p_f-p_m|) >= r/tan(alpha/2).

    Collinear triples pass trivially (no arc, tangent length zero).
    """
    check_turn_radius(r)
    d1 = dist(p_i, p_m)
    d2 = dist(p_m, p_f)
    if d1 <= LENGTH_EPSILON or d2 <= LENGTH_EPSILON:
        raise DegeneratePointsError("triplet points must be pairwise distinct")
    if is_collinear(p_i, p_m, p_f):
        return True
    alpha = interior_angle(p_i, p_m, p_f)
    if alpha <= 0.0:
        return False  # exact reversal: no finite tangent length
    return min(d1, d2) >= r / math.tan(0.5 * alpha)


def _tangent_lengths(pts: tuple[Point2, ...], r: float) -> list[float]:
    """Tangent length per vertex: 0 at endpoints and pass-through vertices,
    inf at exact reversals."""
    out = [0.0] * len(pts)
    for j in range(1, len(pts) - 1):
        if is_collinear(pts[j - 1], pts[j], pts[j + 1]):
            continue
        alpha = interior_angle(pts[j - 1], pts[j], pts[j + 1])
        out[j] = r / math.tan(0.5 * alpha) if alpha > 0.0 else math.inf
    return out


def check_global_existence(p: Polyline, r: float) -> FeasibilityReport:
    """Per-edge check |p_j - p_k| >= l_j + l_k that consecutive tangent
    points exist in order; endpoint vertices contribute zero."""
    check_turn_radius(r)
    pts = p.points
    ls = _tangent_lengths(pts, r)
    local_ok = tuple(
        ls[j] <= min(dist(pts[j - 1], pts[j]), dist(pts[j], pts[j + 1]))
        if 0 < j < len(pts) - 1
        else True
        for j in range(len(pts))
    )
    global_ok = tuple(
        dist(pts[e], pts[e + 1]) >= ls[e] + ls[e + 1] for e in range(len(pts) - 1)
    )
    return FeasibilityReport(local_ok=local_ok, global_ok=global_ok)


def check_far_condition(p: Polyline, r: float) -> tuple[bool, ...]:
    """Per consecutive pair (p_j, p_k): the exit tangent point after p_k is
    at least 4r from p_j. Pass-through and endpoint vertices carry no arc
    and pass trivially. Raises FeasibilityError when tangent points are not
    computable."""
    check_turn_radius(r)
    report = check_global_existence(p, r)
    if not report.feasible:
        raise FeasibilityError("tangent points not computable on infeasible polyline", report)
    pts = p.points
    sols = vertex_solutions(p, r)
    flags = []
    for e in range(len(pts) - 1):
        k = e + 1
        sol = sols[k - 1] if 1 <= k <= len(pts) - 2 else None
        flags.append(True if sol is None else dist(pts[e], sol.q2) >= 4.0 * r)
    return tuple(flags)


def feasibility_report(p: Polyline, r: float) -> FeasibilityReport:
    """Full report: local and global existence plus the 4r far condition
    (far flags omitted when existence already fails)."""
    report = check_global_existence(p, r)
    if not report.feasible:
        return report
    return FeasibilityReport(report.local_ok, report.global_ok, check_far_condition(p, r))


def vertex_solutions(p: Polyline, r: float, mode: str = "strict") -> list[Optional[TripletSolution]]:
    """Triplet solution per interior vertex (None = pass-through).

    In "best-effort" mode over-long tangents are clamped to what the edges
    can hold (contested edges are split proportionally) and the arc radius
    shrinks to keep tangency, so the result stays G1 but may violate the
    curvature bound.
    """
    check_turn_radius(r)
    if mode not in ("strict", "best-effort"):
        raise ValueError(f"unknown smoothing mode {mode!r}")
    pts = p.points
    n = len(pts)
    if mode == "strict":
        report = check_global_existence(p, r)
        if not report.feasible:
            raise FeasibilityError(
                "infeasible polyline: vertex violations "
                f"{report.local_violations}, edge violations {report.global_violations}",
                report,
            )
        return [solve_three_points(pts[j - 1], pts[j], pts[j + 1], r) for j in range(1, n - 1)]

    ls = _tangent_lengths(pts, r)
    allowed = list(ls)
    for e in range(n - 1):
        edge_len = dist(pts[e], pts[e + 1])
        want = ls[e] + ls[e + 1]
        if want > edge_len and 0.0 < want < math.inf:
            scale = edge_len / want
            allowed[e] = min(allowed[e], ls[e] * scale)
            allowed[e + 1] = min(allowed[e + 1], ls[e + 1] * scale)
    sols: list[Optional[TripletSolution]] = []
    for j in range(1, n - 1):
        if is_collinear(pts[j - 1], pts[j], pts[j + 1]):
            sols.append(None)
            continue
        alpha = interior_angle(pts[j - 1], pts[j], pts[j + 1])
        l = min(allowed[j], dist(pts[j - 1], pts[j]), dist(pts[j], pts[j + 1]))
        r_eff = l * math.tan(0.5 * alpha)
        if r_eff <= LENGTH_EPSILON:
            sols.append(None)
            continue
        sols.append(solve_three_points(pts[j - 1], pts[j], pts[j + 1], r_eff))
    return sols


def _solve_pass(pts: tuple[Point2, ...], r: float, lo: int, hi: int) -> list:
    """Raw triplet solves for interior vertices lo..hi-1 (inclusive bounds in
    vertex indices)."""
    out = []
    for j in range(lo, hi):
        a = pts[j - 1]
        m = pts[j]
        b = pts[j + 1]
        out.append(_solve_raw(a.x, a.y, m.x, m.y, b.x, b.y, r))
    return out


def _check_edges(pts: tuple[Point2, ...], raws: list, p: Polyline, r: float) -> None:
    """Reject the solve if any edge cannot hold its two tangent lengths."""
    n = len(pts)
    ls = [0.0] * n
    for j in range(1, n - 1):
        raw = raws[j - 1]
        if raw is not None:
            ls[j] = raw[6]
    for e in range(n - 1):
        if dist(pts[e], pts[e + 1]) < ls[e] + ls[e + 1]:
            report = check_global_existence(p, r)
            raise FeasibilityError(
                "infeasible polyline: vertex violations "
                f"{report.local_violations}, edge violations {report.global_violations}",
                report,
            )


def _assemble_raw(pts: tuple[Point2, ...], raws: list, radius: float) -> SmoothPath:
    segments: list[Segment] = []
    current = pts[0]
    for raw in raws:
        if raw is None:
            continue
        q1x, q1y, q2x, q2y, cx, cy, l, d, alpha, sweep = raw
        q1 = Point2(q1x, q1y)
        if dist(current, q1) > LENGTH_EPSILON:
            segments.append(LineSegment(current, q1))
        start = math.atan2(q1y - cy, q1x - cx)
        segments.append(ArcSegment(Point2(cx, cy), radius, Heading(start), sweep))
        current = Point2(q2x, q2y)
    if dist(current, pts[-1]) > LENGTH_EPSILON:
        segments.append(LineSegment(current, pts[-1]))
    if not segments:
        segments.append(LineSegment(pts[0], pts[-1]))
    return SmoothPath(tuple(segments), pts[0], pts[-1])


def smooth_polyline(p: Polyline, r: float, mode: str = "strict") -> SmoothPath:
    """Smooth a polyline into the shortest G1 path of lines and radius-r arcs.

    The default "strict" mode refuses infeasible input with a
    FeasibilityError carrying the per-vertex/per-edge report; "best-effort"
    clamps tangent lengths instead and shrinks arc radii below r where
    needed, trading the curvature guarantee for totality.
    """
    check_turn_radius(r)
    if mode == "best-effort":
        return _assemble_best_effort(p, r)
    if mode != "strict":
        raise ValueError(f"unknown smoothing mode {mode!r}")
    pts = p.points
    raws = _solve_pass(pts, r, 1, len(pts) - 1)
    _check_edges(pts, raws, p, r)
    return _assemble_raw(pts, raws, r)


def _assemble_best_effort(p: Polyline, r: float) -> SmoothPath:
    segments: list[Segment] = []
    pts = p.points
    current = pts[0]
    for sol in vertex_solutions(p, r, mode="best-effort"):
        if sol is None:
            continue
        if dist(current, sol.q1) > LENGTH_EPSILON:
            segments.append(LineSegment(current, sol.q1))
        radius = dist(sol.q1, sol.center)
        start = math.atan2(sol.q1.y - sol.center.y, sol.q1.x - sol.center.x)
        segments.append(ArcSegment(sol.center, radius, Heading(start), sol.sweep))
        current = sol.q2
    if dist(current, pts[-1]) > LENGTH_EPSILON:
        segments.append(LineSegment(current, pts[-1]))
    if not segments:
        segments.append(LineSegment(pts[0], pts[-1]))
    return SmoothPath(tuple(segments), pts[0], pts[-1])


def _worker_count(parallelism_hint: Optional[int]) -> int:
    if parallelism_hint is not None:
        return max(1, int(parallelism_hint))
    env = os.environ.get("DPS_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def smooth_polyline_batch(
    p: Polyline,
    r: float,
    parallelism_hint: Optional[int] = None,
    mode: str = "strict",
) -> SmoothPath:
    """Smooth with the per-vertex solves evaluated in parallel chunks.

    Every triplet solution depends only on its own three input points and
    chunks are reassembled in vertex order, so the output is bit-identical
    to smooth_polyline regardless of scheduling. DPS_THREADS caps the
    worker count when no hint is given.
    """
    check_turn_radius(r)
    workers = _worker_count(parallelism_hint)
    n = len(p.points)
    if workers == 1 or mode != "strict" or n - 2 < 2 * workers:
        return smooth_polyline(p, r, mode)
    pts = p.points
    first, last = 1, n - 1
    chunk = (last - first + workers - 1) // workers
    spans = [(lo, min(lo + chunk, last)) for lo in range(first, last, chunk)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda span: _solve_pass(pts, r, span[0], span[1]), spans))
    raws = [raw for part in parts for raw in part]
    _check_edges(pts, raws, p, r)
    return _assemble_raw(pts, raws, r)


def path_length(path: SmoothPath) -> float:
    """Total length of a smooth path."""
    return sum(seg.length() for seg in path.segments)


def _segment_start(seg: Segment) -> tuple[Point2, float]:
    if isinstance(seg, LineSegment):
        return seg.a, math.atan2(seg.b.y - seg.a.y, seg.b.x - seg.a.x)
    point, heading = arc_endpoint(seg, at_end=False)
    return point, heading.theta


def _segment_end(seg: Segment) -> tuple[Point2, float]:
    if isinstance(seg, LineSegment):
        return seg.b, math.atan2(seg.b.y - seg.a.y, seg.b.x - seg.a.x)
    point, heading = arc_endpoint(seg, at_end=True)
    return point, heading.theta


def validate(path: SmoothPath, r: float, tol: float = 1e-9) -> ValidationReport:
    """Check endpoint chaining, G1 heading continuity and the curvature bound.

    Records one issue per violation with the index of the offending segment
    or junction; arcs must have radius at least r*(1 - tol).
    """
    check_turn_radius(r)
    issues: list[ValidationIssue] = []
    segs = path.segments
    for i, seg in enumerate(segs):
        if isinstance(seg, ArcSegment) and seg.radius < r * (1.0 - tol):
            issues.append(ValidationIssue(i, "curvature", seg.radius))
    for i in range(len(segs) - 1):
        end_pt, end_h = _segment_end(segs[i])
        start_pt, start_h = _segment_start(segs[i + 1])
        gap = dist(end_pt, start_pt)
        if gap > tol:
            issues.append(ValidationIssue(i, "chaining", gap))
        kink = abs(normalize_angle(start_h - end_h))
        if kink > tol:
            issues.append(ValidationIssue(i, "g1", kink))
    start_pt, _ = _segment_start(segs[0])
    end_pt, _ = _segment_end(segs[-1])
    if dist(start_pt, path.start_point) > tol:
        issues.append(ValidationIssue(0, "start_point", dist(start_pt, path.start_point)))
    if dist(end_pt, path.end_point) > tol:
        issues.append(ValidationIssue(len(segs) - 1, "end_point", dist(end_pt, path.end_point)))
    return ValidationReport(ok=not issues, issues=tuple(issues))


@dataclass(frozen=True, slots=True)
class PathPiece:
    """One vertex sub-path (straight reach plus turn arc) between the
    configurations the smoother produced, for optimality cross-checks."""

    start: Pose
    end: Pose
    length: float
    guaranteed: bool
    vertex: Optional[int]


def extract_pieces(p: Polyline, r: float) -> list[PathPiece]:
    """Split the smoothed result of ``p`` into per-vertex pieces whose
    lengths an independent Dubins solver can be asked to reproduce.

    Each piece runs from the previous exit configuration to a vertex's exit
    tangent configuration; the tail piece covers the final straight.
    ``guaranteed`` carries the piece's 4r far-condition flag.
    """
    pts = p.points
    sols = vertex_solutions(p, r)
    far = check_far_condition(p, r)
    pieces: list[PathPiece] = []
    cur_point = pts[0]
    cur_heading: Optional[float] = None
    for j in range(1, len(pts) - 1):
        sol = sols[j - 1]
        if sol is None:
            continue
        if cur_heading is None:
            cur_heading = math.atan2(pts[j].y - cur_point.y, pts[j].x - cur_point.x)
        exit_heading = math.atan2(pts[j + 1].y - pts[j].y, pts[j + 1].x - pts[j].x)
        pieces.append(
            PathPiece(
                start=Pose(cur_point, Heading(cur_heading)),
                end=Pose(sol.q2, Heading(exit_heading)),
                length=dist(cur_point, sol.q1) + r * abs(sol.sweep),
                guaranteed=far[j - 1],
                vertex=j,
            )
        )
        cur_point = sol.q2
        cur_heading = exit_heading
    if cur_heading is None:
        cur_heading = math.atan2(pts[-1].y - cur_point.y, pts[-1].x - cur_point.x)
    if dist(cur_point, pts[-1]) > LENGTH_EPSILON:
        pieces.append(
            PathPiece(
                start=Pose(cur_point, Heading(cur_heading)),
                end=Pose(pts[-1], Heading(cur_heading)),
                length=dist(cur_point, pts[-1]),
                guaranteed=True,
                vertex=None,
            )
        )
    return pieces


def point_to_path_distance(p: Point2, path: SmoothPath) -> float:
    """Minimum distance from a point to any path segment."""
    best = math.inf
    for seg in path.segments:
        if isinstance(seg, LineSegment):
            best = min(best, point_segment_distance(p, seg.a, seg.b))
        else:
            best = min(best, point_arc_distance(p, seg))
    return best
