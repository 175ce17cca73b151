"""Shortest Dubins paths from the six closed-form words, plus a
sampled-heading multipoint solver used as an independent length reference.

The word formulas follow the classical Dubins-set formulation in scaled
coordinates (unit turning radius); they accept scalars or numpy arrays, so
the same expressions back both the single-pair solver and the dynamic
program over heading grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .geom import Heading, Point2, Pose, dist
from .smoother import check_turn_radius

WORD_ORDER = ("LSL", "RSR", "LSR", "RSL", "RLR", "LRL")
CSC_WORDS = frozenset(("LSL", "RSR", "LSR", "RSL"))

_TWO_PI = 2.0 * math.pi
# Sweeps within rounding distance of a full circle are a numerical zero;
# folding them keeps degenerate first/last arcs at exactly 0.
_FULL_CIRCLE_SNAP = 1e-12
_TIE_EPSILON = 1e-12


@dataclass(frozen=True, slots=True)
class DubinsWord:
    """One maneuver class with its three segment lengths (unscaled)."""

    word: str
    lengths: tuple[float, float, float]
    total: float


def _mod2pi(x):
    y = np.mod(x, _TWO_PI)
    return np.where(y >= _TWO_PI - _FULL_CIRCLE_SNAP, 0.0, y)


def _lsl(alpha, beta, d, sa, ca, sb, cb, cab):
    tmp0 = d + sa - sb
    psq = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sa - sb)
    # psq == 0 means coincident turn circles: the maneuver is a single left
    # arc, and the tmp1 split degenerates to atan2(0, 0). Handle it exactly
    # (these are precisely the tangent-to-tangent arc pieces).
    boundary = 1e-12 * (4.0 + d * d)
    degenerate = psq <= boundary
    ok = psq >= -boundary
    tmp1 = np.arctan2(cb - ca, tmp0)
    t = np.where(degenerate, 0.0, _mod2pi(tmp1 - alpha))
    p = np.where(degenerate, 0.0, np.sqrt(np.where(psq > 0.0, psq, 0.0)))
    q = np.where(degenerate, _mod2pi(beta - alpha), _mod2pi(beta - tmp1))
    return t, p, q, ok


def _rsr(alpha, beta, d, sa, ca, sb, cb, cab):
    tmp0 = d - sa + sb
    psq = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sb - sa)
    boundary = 1e-12 * (4.0 + d * d)
    degenerate = psq <= boundary
    ok = psq >= -boundary
    tmp1 = np.arctan2(ca - cb, tmp0)
    t = np.where(degenerate, 0.0, _mod2pi(alpha - tmp1))
    p = np.where(degenerate, 0.0, np.sqrt(np.where(psq > 0.0, psq, 0.0)))
    q = np.where(degenerate, _mod2pi(alpha - beta), _mod2pi(tmp1 - beta))
    return t, p, q, ok


def _lsr(alpha, beta, d, sa, ca, sb, cb, cab):
    psq = -2.0 + d * d + 2.0 * cab + 2.0 * d * (sa + sb)
    ok = psq >= 0.0
    p = np.sqrt(np.where(ok, psq, 0.0))
    tmp = np.arctan2(-ca - cb, d + sa + sb) - np.arctan2(-2.0, p)
    t = _mod2pi(tmp - alpha)
    q = _mod2pi(tmp - beta)
    return t, p, q, ok


def _rsl(alpha, beta, d, sa, ca, sb, cb, cab):
    psq = -2.0 + d * d + 2.0 * cab - 2.0 * d * (sa + sb)
    ok = psq >= 0.0
    p = np.sqrt(np.where(ok, psq, 0.0))
    tmp = np.arctan2(ca + cb, d - sa - sb) - np.arctan2(2.0, p)
    t = _mod2pi(alpha - tmp)
    q = _mod2pi(beta - tmp)
    return t, p, q, ok


def _rlr(alpha, beta, d, sa, ca, sb, cb, cab):
    tmp = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sa - sb)) / 8.0
    ok = np.abs(tmp) <= 1.0
    p = _mod2pi(_TWO_PI - np.arccos(np.clip(tmp, -1.0, 1.0)))
    t = _mod2pi(alpha - np.arctan2(ca - cb, d - sa + sb) + 0.5 * p)
    q = _mod2pi(alpha - beta - t + p)
    return t, p, q, ok


def _lrl(alpha, beta, d, sa, ca, sb, cb, cab):
    tmp = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sb - sa)) / 8.0
    ok = np.abs(tmp) <= 1.0
    p = _mod2pi(_TWO_PI - np.arccos(np.clip(tmp, -1.0, 1.0)))
    t = _mod2pi(-alpha - np.arctan2(ca - cb, d + sa - sb) + 0.5 * p)
    q = _mod2pi(beta - alpha - t + p)
    return t, p, q, ok


_WORD_FUNCS = {
    "LSL": _lsl,
    "RSR": _rsr,
    "LSR": _lsr,
    "RSL": _rsl,
    "RLR": _rlr,
    "LRL": _lrl,
}


def _scaled_problem(start: Pose, goal: Pose, r: float) -> tuple[float, float, float]:
    """Reduce a pose pair to the scaled standard parameters (alpha, beta, d)."""
    dx = goal.position.x - start.position.x
    dy = goal.position.y - start.position.y
    theta = math.atan2(dy, dx)
    d = math.hypot(dx, dy) / r
    alpha = (start.heading.theta - theta) % _TWO_PI
    beta = (goal.heading.theta - theta) % _TWO_PI
    return alpha, beta, d


def solve_word(word: str, start: Pose, goal: Pose, r: float) -> Optional[DubinsWord]:
    """Evaluate one maneuver class; None when it has no real solution."""
    check_turn_radius(r)
    alpha, beta, d = _scaled_problem(start, goal, r)
    sa, ca = math.sin(alpha), math.cos(alpha)
    sb, cb = math.sin(beta), math.cos(beta)
    cab = math.cos(alpha - beta)
    t, p, q, ok = _WORD_FUNCS[word](alpha, beta, d, sa, ca, sb, cb, cab)
    if not ok:
        return None
    lengths = (float(t) * r, float(p) * r, float(q) * r)
    return DubinsWord(word, lengths, sum(lengths))


def dubins_shortest(start: Pose, goal: Pose, r: float) -> DubinsWord:
    """Shortest of the six closed-form words, lengths unscaled by r.

    Ties within 1e-12 are broken by the fixed word order so differential
    tests stay deterministic.
    """
    check_turn_radius(r)
    alpha, beta, d = _scaled_problem(start, goal, r)
    sa, ca = math.sin(alpha), math.cos(alpha)
    sb, cb = math.sin(beta), math.cos(beta)
    cab = math.cos(alpha - beta)
    best: Optional[DubinsWord] = None
    for word in WORD_ORDER:
        t, p, q, ok = _WORD_FUNCS[word](alpha, beta, d, sa, ca, sb, cb, cab)
        if not ok:
            continue
        total = (float(t) + float(p) + float(q)) * r
        if best is None or total < best.total - _TIE_EPSILON:
            best = DubinsWord(word, (float(t) * r, float(p) * r, float(q) * r), total)
    assert best is not None  # LSL/RSR always admit a solution
    return best


def classify_j_type(start: Pose, goal: Pose, r: float) -> tuple[bool, DubinsWord]:
    """Whether the optimal word starts straight (no initial arc).

    True when the shortest word is a CSC word whose first arc is zero
    within 1e-9, i.e. the straight segment leaves at the initial heading.
    """
    word = dubins_shortest(start, goal, r)
    return word.word in CSC_WORDS and word.lengths[0] <= 1e-9, word


def _pair_cost(p: Point2, q: Point2, h1: np.ndarray, h2: np.ndarray, r: float) -> np.ndarray:
    """Matrix of shortest Dubins lengths from (p, h1[i]) to (q, h2[j])."""
    dx = q.x - p.x
    dy = q.y - p.y
    theta = math.atan2(dy, dx)
    d = math.hypot(dx, dy) / r
    alpha = np.mod(h1 - theta, _TWO_PI)[:, None]
    beta = np.mod(h2 - theta, _TWO_PI)[None, :]
    sa, ca = np.sin(alpha), np.cos(alpha)
    sb, cb = np.sin(beta), np.cos(beta)
    cab = ca * cb + sa * sb
    best = None
    for word in WORD_ORDER:
        t, pl, ql, ok = _WORD_FUNCS[word](alpha, beta, d, sa, ca, sb, cb, cab)
        total = np.where(ok, t + pl + ql, np.inf)
        best = total if best is None else np.minimum(best, total)
    return best * r


def multipoint_bruteforce(
    points: Sequence[Point2],
    r: float,
    samples_per_angle: int,
    headings: Optional[Sequence[Sequence[float]]] = None,
) -> float:
    """Shortest concatenation of Dubins paths through all points over a
    sampled heading grid, by dynamic programming over per-point headings.

    With ``headings`` given, the per-point candidate sets replace the
    uniform grid (e.g. singleton sets pin the headings). Refining the grid
    by doubling ``samples_per_angle`` never increases the result.
    """
    check_turn_radius(r)
    pts = list(points)
    if len(pts) < 2:
        raise ValueError("multipoint solve needs at least 2 points")
    if headings is None:
        if samples_per_angle < 4:
            raise ValueError("need at least 4 heading samples per point")
        grid = np.arange(samples_per_angle) * (_TWO_PI / samples_per_angle)
        sets = [grid] * len(pts)
    else:
        if len(headings) != len(pts):
            raise ValueError("need one heading set per point")
        sets = [np.asarray(h, dtype=float) for h in headings]
        if any(s.size == 0 for s in sets):
            raise ValueError("heading sets must be non-empty")
    cost_to = np.zeros(sets[0].size)
    for i in range(len(pts) - 1):
        cost = _pair_cost(pts[i], pts[i + 1], sets[i], sets[i + 1], r)
        cost_to = np.min(cost_to[:, None] + cost, axis=0)
    return float(np.min(cost_to))


def rollout(start: Pose, word: DubinsWord, r: float) -> Pose:
    """Forward-integrate a word from a start pose (for cross-checks)."""
    x, y, th = start.position.x, start.position.y, start.heading.theta
    for kind, length in zip(word.word, word.lengths):
        if kind == "S":
            x += length * math.cos(th)
            y += length * math.sin(th)
        else:
            sign = 1.0 if kind == "L" else -1.0
            sweep = sign * length / r
            x += sign * r * (math.sin(th + sweep) - math.sin(th))
            y -= sign * r * (math.cos(th + sweep) - math.cos(th))
            th += sweep
    return Pose(Point2(x, y), Heading(th))
