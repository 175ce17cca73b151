"""Random feasible polylines for benchmarks and statistical tests.

Each new point is sampled uniformly on a circle around the previous point
whose radius is drawn uniformly from [1, 10] turning radii, and resampled
until the placement keeps the polyline feasible:

* the edge behind the new turn holds both of its tangent lengths exactly;
* the new edge reserves twice the new tangent length, leaving symmetric
  room for the still-unknown tangent of the next vertex;
* consecutive exit-tangent configurations are at least 4r apart (the far
  case for each turn's sub-problem; this implies the vertex-to-tangent
  form of the condition as well).

A short edge can make every continuation violate the far condition, so a
point that exhausts its proposal budget backtracks one step and redraws.
Only ``Random.random()`` draws are used (MT19937), so sequences reproduce
across platforms for a fixed seed.
"""

from __future__ import annotations

import math
import random
from typing import Optional

from .geom import Point2
from .smoother import Polyline, check_turn_radius

_TWO_PI = 2.0 * math.pi

# An edge whose span past the fixed tangent point is below ~3.678r cannot
# satisfy the next 4r far check for any continuation (maximizing the
# reachable distance over the coupled turn angle and tangent length tops
# out below 4r). Filtering at 3.67r rejects only provably trapped edges.
_DOOMED_SPAN = 3.67


def random_polyline(
    n: int,
    r: float = 1.0,
    rng: Optional[random.Random] = None,
    seed: Optional[int] = None,
    radius_low: float = 1.0,
    radius_high: float = 10.0,
    tries_per_point: int = 60,
) -> Polyline:
    """Random polyline of ``n`` points that is feasible for turning radius r
    and satisfies the 4r far condition at every vertex."""
    check_turn_radius(r)
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    if rng is None:
        rng = random.Random(seed)
    lo = radius_low * r
    span = (radius_high - radius_low) * r
    four_r = 4.0 * r
    xs = [0.0]
    ys = [0.0]
    claims = [0.0]  # tangent length already fixed at each placed point
    proposals_left = 1000 * n * tries_per_point
    rnd = rng.random
    cos = math.cos
    sin = math.sin
    hypot = math.hypot
    while len(xs) < n:
        px = xs[-1]
        py = ys[-1]
        final_point = len(xs) + 1 == n
        if len(xs) > 1:
            bx = xs[-2]
            by = ys[-2]
        accepted = False
        for _ in range(tries_per_point):
            proposals_left -= 1
            if proposals_left <= 0:
                raise RuntimeError("polyline sampling did not converge")
            ang = _TWO_PI * rnd()
            rad = lo + span * rnd()
            cx = px + rad * cos(ang)
            cy = py + rad * sin(ang)
            if len(xs) == 1:
                if not final_point and rad < _DOOMED_SPAN * r:
                    continue
                l_new = 0.0
                accepted = True
                break
            # The candidate fixes the turn angle at the current last point.
            v1x = px - bx
            v1y = py - by
            v2x = cx - px
            v2y = cy - py
            n1 = hypot(v1x, v1y)
            crs = v1x * v2y - v1y * v2x
            dt = v1x * v2x + v1y * v2y
            denom = dt + n1 * rad
            if denom <= 0.0:
                continue
            l_new = r * abs(crs) / denom
            l_prev = claims[-2]
            if n1 < l_prev + l_new:  # edge behind holds both tangents
                continue
            if rad < 2.0 * l_new:  # reserve room for the next vertex's tangent
                continue
            # An edge this short can never satisfy the next far check, so
            # placing it only sets a trap for the following point.
            if not final_point and rad < l_new + _DOOMED_SPAN * r:
                continue
            # Far case between this turn's start and end configurations.
            qx = px + l_new * v2x / rad
            qy = py + l_new * v2y / rad
            ex = bx + l_prev * v1x / n1
            ey = by + l_prev * v1y / n1
            if hypot(qx - ex, qy - ey) < four_r:
                continue
            accepted = True
            break
        if accepted:
            if len(xs) > 1:
                claims[-1] = l_new
            xs.append(cx)
            ys.append(cy)
            claims.append(0.0)
        elif len(xs) > 1:
            # Trapped behind a short edge: drop it and redraw.
            xs.pop()
            ys.pop()
            claims.pop()
            claims[-1] = 0.0
    return Polyline([Point2(x, y) for x, y in zip(xs, ys)])
