"""Random inputs shared by the geodesic and acceptance tests."""
from fractions import Fraction

import numpy as np

from hoferlie.algebra import adjoint, diag_skew, group_exp, random_skew, random_unitary
from hoferlie.batteries import random_regular_dominant
from hoferlie.geodesy import DerivativePath
from hoferlie.norms import OrbitFamily


def regular_orbit_family(n, rng):
    return OrbitFamily.orbit(random_regular_dominant(n, rng))


def commuting_speeds(n, k, rng, den=4):
    """k commuting speeds in one random basis with a common eigenvalue order."""
    u = random_unitary(n, rng)
    perm = rng.permutation(n)
    speeds = []
    for _ in range(k):
        r = sorted((Fraction(int(c), den) for c in rng.integers(-8, 9, n)), reverse=True)
        m = sum(r) / n
        v = [c - m for c in r]
        arr = np.empty(n)
        arr[perm] = [float(c) for c in v]
        speeds.append(adjoint(u, diag_skew(arr)))
    return speeds


def crossing_family_speeds(n, rng):
    """Two commuting speeds whose eigenvalue orders strictly disagree on a pair."""
    u = random_unitary(n, rng)
    a = np.arange(n, 0, -1, dtype=float)
    a -= a.mean()
    b = a.copy()
    b[[0, 1]] = b[[1, 0]]
    return [adjoint(u, diag_skew(a)), adjoint(u, diag_skew(b))]


def derivative_path(speeds, rng=None):
    k = len(speeds)
    if rng is None:
        times = np.linspace(0.0, 1.0, k + 1)
    else:
        times = np.concatenate([[0.0], np.cumsum(rng.uniform(0.2, 1.0, k))])
    return DerivativePath(tuple(times), tuple(speeds))


def skew_of_radius(n, rng, radius):
    v = rng.standard_normal(n)
    v -= v.mean()
    v *= radius / np.max(np.abs(v))
    return random_skew(n, rng, v)


def competitor_polygon(u, z, rng, pieces, wobble=0.15):
    """Points from u to u exp(z) near the segment, each step a small perturbation."""
    n = z.shape[0]
    ts = np.sort(rng.uniform(0.0, 1.0, pieces - 1))
    pts = [u]
    for t in ts:
        pts.append(u @ group_exp(t * z) @ group_exp(skew_of_radius(n, rng, wobble * rng.uniform())))
    pts.append(u @ group_exp(z))
    return pts
