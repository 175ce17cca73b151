import math
import random

import pytest

from dps.geom import Point2


def make_triplet(rng: random.Random, r: float, alpha_min: float = 0.2,
                 alpha_max: float = math.pi - 0.05, margin: float = 1.05):
    """Random feasible triplet with controlled interior angle.

    Edges are long enough (by ``margin``) to hold the tangent length, so
    the three-point solve always succeeds.
    """
    alpha = rng.uniform(alpha_min, alpha_max)
    l = r / math.tan(0.5 * alpha)
    length1 = l * margin + rng.uniform(0.0, 10.0 * r)
    length2 = l * margin + rng.uniform(0.0, 10.0 * r)
    psi = rng.uniform(-math.pi, math.pi)
    turn = (math.pi - alpha) * (1 if rng.random() < 0.5 else -1)
    mx = rng.uniform(-50.0, 50.0)
    my = rng.uniform(-50.0, 50.0)
    p_m = Point2(mx, my)
    p_i = Point2(mx - length1 * math.cos(psi), my - length1 * math.sin(psi))
    psi_out = psi + turn
    p_f = Point2(mx + length2 * math.cos(psi_out), my + length2 * math.sin(psi_out))
    return p_i, p_m, p_f, alpha


@pytest.fixture
def rng():
    return random.Random(20240131)
