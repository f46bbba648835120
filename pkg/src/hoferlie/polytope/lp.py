"""Exact two-phase simplex over the rationals.

Solves ``max c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``,
``x >= 0``. Arithmetic runs on gmpy2 ``mpq``; Bland's rule guarantees
termination on the heavily degenerate programs that arise from Weyl-orbit
data.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _q(v) -> mpq:
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    return mpq(v)


def _frac(q: mpq) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _pivot(T, obj, basis, r, c):
    row = T[r]
    inv = 1 / row[c]
    row = [a * inv for a in row]
    T[r] = row
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]
    f = obj[c]
    if f:
        obj[:] = [a - f * b for a, b in zip(obj, row)]
    basis[r] = c


def _simplex(T, obj, basis, allowed):
    """Maximize in place; ``obj`` holds reduced costs, last entry is -value."""
    while True:
        c = next((j for j in allowed if obj[j] > 0), None)
        if c is None:
            return OPTIMAL
        best = None
        r_best = None
        for i, row in enumerate(T):
            a = row[c]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[r_best]):
                    best, r_best = ratio, i
        if r_best is None:
            return UNBOUNDED
        _pivot(T, obj, basis, r_best, c)


def linprog_exact(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    nv = len(c)
    rows = []  # (coeffs, rhs, kind) with kind in {"ub", "eq"}
    for a, b in zip(A_ub, b_ub):
        rows.append(([_q(v) for v in a], _q(b), "ub"))
    for a, b in zip(A_eq, b_eq):
        rows.append(([_q(v) for v in a], _q(b), "eq"))
    m = len(rows)
    n_slack = sum(1 for r in rows if r[2] == "ub")
    # column layout: x | slacks | artificials | rhs
    T = []
    basis = []
    art_cols = []
    s = 0
    need_art = []
    for i, (a, b, kind) in enumerate(rows):
        slack = [mpq(0)] * n_slack
        if kind == "ub":
            slack[s] = mpq(1)
            s_col = nv + s
            s += 1
        sign = -1 if b < 0 else 1
        coeffs = [sign * v for v in a] + [sign * v for v in slack]
        if kind == "ub" and sign > 0:
            basis.append(s_col)
            need_art.append(False)
        else:
            basis.append(None)
            need_art.append(True)
        T.append((coeffs, sign * b))
    n_art = sum(need_art)
    width = nv + n_slack + n_art
    tab = []
    k = 0
    for i, (coeffs, rhs) in enumerate(T):
        art = [mpq(0)] * n_art
        if need_art[i]:
            art[k] = mpq(1)
            basis[i] = nv + n_slack + k
            art_cols.append(nv + n_slack + k)
            k += 1
        tab.append(coeffs + art + [rhs])
    T = tab
    real_cols = list(range(nv + n_slack))

    if n_art:
        # phase 1: maximize -sum(artificials)
        obj = [mpq(0)] * (width + 1)
        for i in range(m):
            if basis[i] in art_cols:
                obj = [o + t for o, t in zip(obj, T[i])]
        for j in art_cols:
            obj[j] = mpq(0)
        _simplex(T, obj, basis, real_cols)
        if obj[-1] != 0:  # -(-sum art) at optimum is nonzero
            return LPResult(INFEASIBLE)
        # drive artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(T):
            if basis[i] in art_cols:
                c_in = next((j for j in real_cols if T[i][j] != 0), None)
                if c_in is None:
                    del T[i]
                    del basis[i]
                    continue
                _pivot(T, obj, basis, i, c_in)
            i += 1
        keep = real_cols + [width]
        T = [[row[j] for j in keep] for row in T]
    obj = [_q(v) for v in c] + [mpq(0)] * n_slack + [mpq(0)]
    for i, b in enumerate(basis):
        f = obj[b]
        if f:
            obj = [o - f * t for o, t in zip(obj, T[i])]
    status = _simplex(T, obj, basis, real_cols)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [mpq(0)] * nv
    for i, b in enumerate(basis):
        if b < nv:
            x[b] = T[i][-1]
    return LPResult(OPTIMAL, tuple(_frac(v) for v in x), _frac(-obj[-1]))


def feasible_point(A_eq, b_eq, A_ub=(), b_ub=()) -> tuple | None:
    """A nonnegative solution of the system, or None."""
    nv = len(A_eq[0]) if A_eq else len(A_ub[0])
    res = linprog_exact([0] * nv, A_ub, b_ub, A_eq, b_eq)
    return res.x if res.status == OPTIMAL else None
