"""Rational helpers and exact linear algebra over the rationals."""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from ..config import SNAP_DENOMINATOR
from ..errors import MalformedInput

RVec = tuple  # tuple of Fraction


def as_fraction(x, max_den: int = SNAP_DENOMINATOR) -> Fraction:
    """Convert ``x`` to a Fraction.

    Integers, Fractions and ``"p/q"`` strings convert exactly; floats are
    snapped to the nearest rational with denominator at most ``max_den``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, np.bool_)):
        raise MalformedInput(f"not a number: {x!r}")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad rational literal {x!r}") from exc
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise MalformedInput(f"non-finite value {x!r}")
        return Fraction(float(x)).limit_denominator(max_den)
    raise MalformedInput(f"cannot interpret {x!r} as a rational")


def as_rvec(v: Iterable, max_den: int = SNAP_DENOMINATOR) -> RVec:
    return tuple(as_fraction(c, max_den) for c in v)


def snap_to_grid(values: Sequence[float], den: int = SNAP_DENOMINATOR) -> tuple[RVec, float]:
    """Round floats to multiples of 1/den, restoring an exact zero sum.

    A grid (rather than best approximation) keeps nearly equal inputs equal
    after snapping. The rounding residual of the sum is absorbed by the
    coordinate whose rounding moved it least. Returns the snapped vector and
    the maximal absolute change.
    """
    vals = [float(v) for v in values]
    ints = [round(v * den) for v in vals]
    excess = sum(ints)
    if excess:
        # push the residual onto coordinates with the most slack in that direction
        step = -1 if excess > 0 else 1
        order = sorted(range(len(vals)), key=lambda j: step * (vals[j] * den - ints[j]), reverse=True)
        for k in range(abs(excess)):
            ints[order[k % len(order)]] += step
    out = tuple(Fraction(i, den) for i in ints)
    err = max((abs(float(o) - v) for o, v in zip(out, vals)), default=0.0)
    return out, err


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vec(v: Sequence) -> bool:
    return all(c == 0 for c in v)


def fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def common_denominator(vals: Iterable[Fraction]) -> int:
    d = 1
    for q in vals:
        d = d * q.denominator // math.gcd(d, q.denominator)
    return d


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a nonzero rational vector to a primitive integer vector."""
    fr = [Fraction(c) for c in v]
    d = common_denominator(fr)
    ints = [int(c * d) for c in fr]
    g = 0
    for i in ints:
        g = math.gcd(g, i)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(i // g for i in ints)


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form. Returns (matrix, pivot columns)."""
    M = [[Fraction(c) for c in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [a * inv for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[RVec]:
    """Basis of {x : row . x = 0 for every row}, one vector per free column."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    R, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, pc in enumerate(piv):
            x[pc] = -R[i][f]
        basis.append(tuple(x))
    return basis


def independent_rows(rows: Sequence[Sequence[int]], want: int) -> list[int]:
    """Greedy indices of linearly independent rows, stopping at ``want``."""
    chosen: list[int] = []
    echelon: list[tuple[int, list[Fraction]]] = []
    for idx, row in enumerate(rows):
        v = [Fraction(c) for c in row]
        for pc, er in echelon:
            if v[pc] != 0:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, er)]
        pc = next((j for j, a in enumerate(v) if a != 0), None)
        if pc is None:
            continue
        inv = 1 / v[pc]
        echelon.append((pc, [a * inv for a in v]))
        chosen.append(idx)
        if len(chosen) == want:
            break
    return chosen


def solve_square(A: Sequence[Sequence], b: Sequence) -> RVec:
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    R, piv = rref(aug, n)
    if len(piv) < n:
        raise ValueError("singular system")
    return tuple(R[i][n] for i in range(n))


def inverse(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    aug = [list(A[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = rref(aug, n)
    if len(piv) < n:
        raise ValueError("singular matrix")
    return [row[n:] for row in R]
