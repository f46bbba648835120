"""Cartan subalgebra of su(n) in eigenvalue coordinates and the Weyl group S_n.

A Cartan vector is a tuple of n numbers summing to zero: exact ``Fraction``
entries, or floats. The dominant chamber is the set of weakly decreasing
vectors.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .config import EPS_CLUSTER, EPS_MAT
from .errors import DimensionTooLarge, MalformedInput, NotDominant
from .polytope.exact import as_rvec

MAX_ORBIT_N = 8


def _is_exact(v) -> bool:
    return not any(isinstance(c, (float, np.floating)) for c in v)


def cartan(v: Sequence, exact: bool | None = None, tol: float = EPS_MAT) -> tuple:
    """Validate v as a sum-zero vector; rationals stay exact, floats stay floats."""
    if exact is None:
        exact = _is_exact(v)
    if exact:
        out = as_rvec(v)
        if sum(out) != 0:
            raise MalformedInput("coordinates must sum to zero")
        return out
    out = tuple(float(c) for c in v)
    if abs(sum(out)) > tol * (1 + max(map(abs, out), default=0.0)):
        raise MalformedInput("coordinates must sum to zero")
    return out


def pairing(x: Sequence, y: Sequence):
    return sum((a * b for a, b in zip(x, y)), Fraction(0) if _is_exact(x) and _is_exact(y) else 0.0)


def dominant(v: Sequence) -> tuple:
    return tuple(sorted(v, reverse=True))


def is_dominant(v: Sequence) -> bool:
    return all(a >= b for a, b in zip(v, v[1:]))


def _require_dominant(v):
    if not is_dominant(v):
        raise NotDominant(f"{tuple(v)} is not weakly decreasing")


def weyl_orbit(v: Sequence) -> set:
    if len(v) > MAX_ORBIT_N:
        raise DimensionTooLarge(f"orbit enumeration limited to n <= {MAX_ORBIT_N}")
    return set(itertools.permutations(tuple(v)))


def orbit_size(v: Sequence) -> int:
    counts = {}
    for c in v:
        counts[c] = counts.get(c, 0) + 1
    out = math.factorial(len(v))
    for k in counts.values():
        out //= math.factorial(k)
    return out


def longest_element(v: Sequence) -> tuple:
    return tuple(reversed(tuple(v)))


def _clusters(v: Sequence, eps: float):
    """Run lengths of equal consecutive coordinates of a sorted vector."""
    exact = _is_exact(v)
    runs = [1]
    for a, b in zip(v, v[1:]):
        same = (a == b) if exact else abs(a - b) <= eps
        if same:
            runs[-1] += 1
        else:
            runs.append(1)
    return runs


def is_regular(v: Sequence, eps_cluster: float = EPS_CLUSTER) -> bool:
    return all(r == 1 for r in _clusters(dominant(v), eps_cluster))


def stabilizer_blocks(v: Sequence, eps_cluster: float = EPS_CLUSTER) -> list[int]:
    _require_dominant(v)
    return _clusters(tuple(v), eps_cluster)


def is_symmetric(v: Sequence, tol: float = EPS_MAT) -> bool:
    """Does the longest element send v to -v?"""
    _require_dominant(v)
    r = longest_element(v)
    if _is_exact(v):
        return all(a == -b for a, b in zip(r, v))
    return all(abs(a + b) <= tol * (1 + abs(b)) for a, b in zip(r, v))


def chamber_generators(n: int) -> list[tuple[Fraction, ...]]:
    """Extreme rays omega_k = (1^k, 0^(n-k)) - k/n of the dominant chamber."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return [tuple(Fraction(int(j < k)) - Fraction(k, n) for j in range(n)) for k in range(1, n)]


def positive_roots(n: int) -> list[tuple[int, ...]]:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            e = [0] * n
            e[i], e[j] = 1, -1
            out.append(tuple(e))
    return out


def prefix_sums(v: Sequence) -> list:
    """<omega_k, v> for k = 1..n-1 (valid because v sums to zero)."""
    out = []
    s = Fraction(0) if _is_exact(v) else 0.0
    for c in v[:-1]:
        s += c
        out.append(s)
    return out


class TypeA:
    """The Weyl layer for SU(n): S_n acting by permuting coordinates."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("n must be at least 2")
        self.n = n

    dominant = staticmethod(dominant)
    orbit = staticmethod(weyl_orbit)
    longest = staticmethod(longest_element)
    is_regular = staticmethod(is_regular)

    def chamber_generators(self):
        return chamber_generators(self.n)

    def positive_roots(self):
        return positive_roots(self.n)
