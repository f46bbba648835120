"""Double description method for pointed polyhedral cones.

Given integer rows r_i, enumerate the extreme rays of C = {z : r_i . z <= 0}.
Rays are kept as primitive integer vectors and zero sets as int bitmasks, so
every orientation predicate is an exact integer sign.
"""
from __future__ import annotations

import math
from typing import Sequence

from ..errors import Unbounded
from .exact import independent_rows, inverse, primitive


def _idot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _prim(v: list[int]) -> tuple[int, ...]:
    g = 0
    for c in v:
        g = math.gcd(g, c)
    return tuple(c // g for c in v)


def extreme_rays(rows: Sequence[Sequence[int]]) -> list[tuple[tuple[int, ...], int]]:
    """Extreme rays of {z : row . z <= 0 for every row}.

    Returns ``(ray, mask)`` pairs where bit i of ``mask`` is set when row i is
    tight on the ray. Raises Unbounded when the cone is not pointed (rows do
    not have full column rank).
    """
    rows = [tuple(int(c) for c in r) for r in rows]
    if not rows:
        raise Unbounded("no constraints")
    D = len(rows[0])
    start = independent_rows(rows, D)
    if len(start) < D:
        raise Unbounded("constraint rows do not have full column rank")
    inv = inverse([rows[i] for i in start])
    rays: list[tuple[int, ...]] = []
    masks: list[int] = []
    for j in range(D):
        rays.append(primitive([-inv[i][j] for i in range(D)]))
    for r in rays:
        masks.append(sum(1 << i for i, row in enumerate(rows) if i in start and _idot(row, r) == 0))

    started = set(start)
    # process remaining rows in a fixed order; skip all-zero rows
    for k, a in enumerate(rows):
        if k in started:
            continue
        if not any(a):
            continue
        vals = [_idot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        if not pos:
            bit = 1 << k
            masks = [m | bit if v == 0 else m for m, v in zip(masks, vals)]
            continue
        neg = [i for i, v in enumerate(vals) if v < 0]
        new_rays: list[tuple[int, ...]] = []
        new_masks: list[int] = []
        need = D - 2
        for p in pos:
            mp = masks[p]
            for q in neg:
                common = mp & masks[q]
                if common.bit_count() < need:
                    continue
                adjacent = True
                for t, mt in enumerate(masks):
                    if t != p and t != q and (mt & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], vals[q]
                rp, rq = rays[p], rays[q]
                new = _prim([vp * y - vq * x for x, y in zip(rp, rq)])
                new_rays.append(new)
                new_masks.append(common | (1 << k))
        bit = 1 << k
        keep_rays = []
        keep_masks = []
        for r, m, v in zip(rays, masks, vals):
            if v < 0:
                keep_rays.append(r)
                keep_masks.append(m)
            elif v == 0:
                keep_rays.append(r)
                keep_masks.append(m | bit)
        rays = keep_rays + new_rays
        masks = keep_masks + new_masks
    return list(zip(rays, masks))
