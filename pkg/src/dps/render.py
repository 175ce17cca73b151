"""SVG rendering of smooth paths, polylines, and scenario obstacles.

Arcs are emitted as native SVG ``A`` commands (no polyline approximation);
a group transform flips the y-axis so geometry coordinates map directly to
the usual math orientation.
"""

from __future__ import annotations

import math
from typing import Optional

from .geom import ArcSegment, LineSegment, arc_endpoint
from .planner import Scenario
from .smoother import Polyline, SmoothPath

_FULL = 2.0 * math.pi - 1e-9


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _arc_command(arc: ArcSegment) -> str:
    """One or two elliptical-arc commands covering the arc's sweep."""
    parts = []
    sweep = arc.sweep
    start = arc.start_angle.theta
    # A full circle degenerates in the A command; emit it as two halves.
    halves = [(start, sweep)] if abs(sweep) < _FULL else [
        (start, 0.5 * sweep),
        (start + 0.5 * sweep, 0.5 * sweep),
    ]
    for a0, ds in halves:
        end_x = arc.center.x + arc.radius * math.cos(a0 + ds)
        end_y = arc.center.y + arc.radius * math.sin(a0 + ds)
        large = 1 if abs(ds) > math.pi else 0
        sweep_flag = 1 if ds > 0 else 0
        parts.append(
            f"A {_fmt(arc.radius)} {_fmt(arc.radius)} 0 {large} {sweep_flag} "
            f"{_fmt(end_x)} {_fmt(end_y)}"
        )
    return " ".join(parts)


def _path_d(path: SmoothPath) -> str:
    segs = path.segments
    first = segs[0]
    if isinstance(first, LineSegment):
        cursor = first.a
    else:
        cursor, _ = arc_endpoint(first, at_end=False)
    parts = [f"M {_fmt(cursor.x)} {_fmt(cursor.y)}"]
    for seg in segs:
        if isinstance(seg, LineSegment):
            parts.append(f"L {_fmt(seg.b.x)} {_fmt(seg.b.y)}")
        else:
            parts.append(_arc_command(seg))
    return " ".join(parts)


def _expand(bbox, x, y, margin=0.0):
    bbox[0] = min(bbox[0], x - margin)
    bbox[1] = min(bbox[1], y - margin)
    bbox[2] = max(bbox[2], x + margin)
    bbox[3] = max(bbox[3], y + margin)


def render_svg(
    path: Optional[SmoothPath],
    scenario: Optional[Scenario] = None,
    polyline: Optional[Polyline] = None,
    width: int = 800,
) -> str:
    """Compose an SVG document from any subset of path, scenario, polyline."""
    if path is None and scenario is None and polyline is None:
        raise ValueError("nothing to render")
    bbox = [math.inf, math.inf, -math.inf, -math.inf]
    if path is not None:
        for seg in path.segments:
            if isinstance(seg, LineSegment):
                _expand(bbox, seg.a.x, seg.a.y)
                _expand(bbox, seg.b.x, seg.b.y)
            else:
                _expand(bbox, seg.center.x, seg.center.y, seg.radius)
    if polyline is not None:
        for p in polyline.points:
            _expand(bbox, p.x, p.y)
    if scenario is not None:
        _expand(bbox, scenario.bounds.xmin, scenario.bounds.ymin)
        _expand(bbox, scenario.bounds.xmax, scenario.bounds.ymax)
        for poly in scenario.obstacles:
            for v in poly.vertices:
                _expand(bbox, v.x, v.y)
    xmin, ymin, xmax, ymax = bbox
    span = max(xmax - xmin, ymax - ymin, 1e-9)
    pad = 0.05 * span
    xmin -= pad
    ymin -= pad
    xmax += pad
    ymax += pad
    w = xmax - xmin
    h = ymax - ymin
    stroke = 0.004 * max(w, h)
    height = int(round(width * h / w))

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{_fmt(xmin)} {_fmt(ymin)} {_fmt(w)} {_fmt(h)}">',
        # Flip y so the document shows the usual math orientation.
        f'<g transform="matrix(1 0 0 -1 0 {_fmt(ymin + ymax)})">',
    ]
    if scenario is not None:
        for poly in scenario.obstacles:
            pts = " ".join(f"{_fmt(v.x)},{_fmt(v.y)}" for v in poly.vertices)
            lines.append(f'<polygon points="{pts}" fill="#b0b0b0" stroke="none"/>')
    if polyline is not None:
        pts = " ".join(f"{_fmt(p.x)},{_fmt(p.y)}" for p in polyline.points)
        lines.append(
            f'<polyline points="{pts}" fill="none" stroke="#2060d0" '
            f'stroke-width="{_fmt(stroke)}"/>'
        )
    if path is not None:
        lines.append(
            f'<path d="{_path_d(path)}" fill="none" stroke="#d03030" '
            f'stroke-width="{_fmt(stroke)}"/>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
