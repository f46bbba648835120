"""Exact convex polytopes in the sum-zero hyperplane of Q^n.

A :class:`Polytope` carries a vertex list, a facet list, or both; whichever
is missing is computed on demand by double description in an exact affine
chart. Facet normals are kept canonical: they lie in the direction space of
the affine hull (hence sum to zero), are primitive integer vectors, and the
sign is fixed by pointing outward.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from ..errors import (
    DegenerateInput,
    DimensionMismatch,
    DimensionTooLarge,
    EmptyPolytope,
    MalformedInput,
    NotAVertex,
    OriginNotInterior,
    Unbounded,
    ZeroDirection,
)
from .dd import extreme_rays
from .exact import (
    as_rvec,
    common_denominator,
    dot,
    fmt,
    inverse,
    nullspace,
    primitive,
    rref,
)
from .lp import OPTIMAL, linprog_exact

MAX_N = 6
MAX_POINTS = 50_000


class Facet(NamedTuple):
    """Inequality <normal, x> <= offset (or an equality, depending on context)."""

    normal: tuple[int, ...]
    offset: Fraction


@dataclass(frozen=True)
class HRepresentation:
    facets: tuple[Facet, ...]
    equalities: tuple[Facet, ...]
    lower_dimensional: bool


class Cone:
    """apex + nonnegative span of generators."""

    def __init__(self, apex: Sequence, generators: Iterable[Sequence]):
        self.apex = as_rvec(apex)
        gens = []
        seen = set()
        for g in generators:
            p = primitive(g)
            if p not in seen:
                seen.add(p)
                gens.append(tuple(Fraction(c) for c in p))
        self.generators = tuple(sorted(gens))

    def contains_direction(self, x: Sequence) -> bool:
        """Is x (projected to the sum-zero hyperplane) a nonnegative combination of generators?"""
        xs = _project_sum_zero(as_rvec(x))
        if all(c == 0 for c in xs):
            return True
        if not self.generators:
            return False
        n = len(xs)
        A_eq = [[g[j] for g in self.generators] for j in range(n)]
        res = linprog_exact([0] * len(self.generators), A_eq=A_eq, b_eq=list(xs))
        return res.status == OPTIMAL

    def __repr__(self):
        return f"Cone(apex={_fmt_vec(self.apex)}, generators={len(self.generators)})"


def _fmt_vec(v):
    return "(" + ", ".join(fmt(c) for c in v) + ")"


def _project_sum_zero(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    m = sum(v, Fraction(0)) / len(v)
    return tuple(c - m for c in v)


def _independent_differences(points: Sequence[tuple]) -> list[tuple]:
    """A maximal independent subset of {p - p0}, found by incremental elimination.

    Points lie in the sum-zero hyperplane, so the scan stops at n - 1 rows.
    """
    p0 = points[0]
    n = len(p0)
    picked, echelon = [], []  # echelon rows as (pivot, row)
    for p in points[1:]:
        d = tuple(a - b for a, b in zip(p, p0))
        r = list(d)
        for c, e in echelon:
            if r[c]:
                f = r[c] / e[c]
                r = [a - f * b for a, b in zip(r, e)]
        c = next((j for j, a in enumerate(r) if a), None)
        if c is None:
            continue
        picked.append(d)
        echelon.append((c, r))
        if len(picked) == n - 1:
            break
    return picked


class _Frame:
    """Affine chart of the hull of a point set: p0 + span(basis).

    ``basis`` is the reduced row echelon basis of the direction space, so the
    chart coordinates of p are simply (p - p0) read at the pivot columns.
    """

    def __init__(self, points: Sequence[tuple]):
        self.p0 = points[0]
        n = len(self.p0)
        basis, piv = rref(_independent_differences(points), n)
        self.basis = [tuple(r) for r in basis]
        self.pivots = piv
        self.dim = len(piv)
        self.n = n
        self._gram_inv = None

    @property
    def gram_inv(self):
        if self._gram_inv is None:
            self._gram_inv = inverse([[dot(a, b) for b in self.basis] for a in self.basis])
        return self._gram_inv

    def coords(self, p):
        return tuple(p[c] - self.p0[c] for c in self.pivots)

    def lift_normal(self, a: Sequence) -> tuple[Fraction, ...]:
        """Normal in the direction space representing the chart functional a."""
        w = [sum((self.gram_inv[i][j] * a[j] for j in range(self.dim)), Fraction(0)) for i in range(self.dim)]
        return tuple(sum((w[i] * self.basis[i][k] for i in range(self.dim)), Fraction(0)) for k in range(self.n))

    def equalities(self) -> list[Facet]:
        rows = [list(b) for b in self.basis] + [[1] * self.n]
        out = []
        for m in nullspace(rows, self.n):
            p = primitive(m)
            first = next(c for c in p if c != 0)
            if first < 0:
                p = tuple(-c for c in p)
            out.append(Facet(p, dot(p, self.p0)))
        return sorted(out)


def _facets_of_points(points: Sequence[tuple]):
    """Canonical facets and equalities of conv(points), plus per-point facet masks."""
    frame = _Frame(points)
    eqs = frame.equalities()
    if frame.dim == 0:
        return frame, [], eqs, [0] * len(points)
    rows = []
    for p in points:
        c = frame.coords(p)
        L = common_denominator(c)
        rows.append(tuple(int(x * L) for x in c) + (-L,))
    rays = extreme_rays(rows)
    facets = []
    point_masks = [0] * len(points)
    for j, (ray, mask) in enumerate(rays):
        a, beta = ray[:-1], ray[-1]
        N = frame.lift_normal(a)
        off = Fraction(beta) + dot(N, frame.p0)
        Ni = primitive(N)
        # primitive() rescales by a positive factor; recover it to scale the offset
        k = next(i for i, c in enumerate(Ni) if c != 0)
        s = Fraction(Ni[k]) / N[k]
        facets.append((Facet(Ni, off * s), mask))
    order = sorted(range(len(facets)), key=lambda j: facets[j][0])
    out = []
    for new_j, j in enumerate(order):
        f, mask = facets[j]
        out.append(f)
        i = 0
        m = mask
        while m:
            if m & 1:
                point_masks[i] |= 1 << new_j
            m >>= 1
            i += 1
    return frame, out, eqs, point_masks


def _vertices_from_h(n: int, facets: Sequence[Facet], equalities: Sequence[Facet]) -> list[tuple]:
    rows = [[Fraction(1)] * n + [Fraction(0)]]
    for e in equalities:
        rows.append([Fraction(c) for c in e.normal] + [Fraction(e.offset)])
    R, piv = rref(rows, n + 1)
    if n in piv:
        raise EmptyPolytope("inconsistent equalities")
    y0 = [Fraction(0)] * n
    for i, pc in enumerate(piv):
        y0[pc] = R[i][n]
    K = nullspace([r[:n] for r in R], n) if R else nullspace([], n)
    y0 = tuple(y0)
    if not K:
        if all(dot(f.normal, y0) <= f.offset for f in facets):
            return [y0]
        raise EmptyPolytope("point violates an inequality")
    dd_rows = []
    for f in facets:
        g = [dot(f.normal, k) for k in K]
        h = Fraction(f.offset) - dot(f.normal, y0)
        row = g + [-h]
        L = common_denominator(row)
        dd_rows.append(tuple(int(c * L) for c in row))
    dd_rows.append(tuple([0] * len(K) + [-1]))
    try:
        rays = extreme_rays(dd_rows)
    except Unbounded as exc:
        raise Unbounded("inequalities do not bound a polytope") from exc
    verts = []
    for ray, _ in rays:
        t = ray[-1]
        if t == 0:
            raise Unbounded("inequalities do not bound a polytope")
        z = [Fraction(c, t) for c in ray[:-1]]
        verts.append(tuple(y0[k] + sum((z[i] * K[i][k] for i in range(len(K))), Fraction(0)) for k in range(n)))
    if not verts:
        raise EmptyPolytope("no feasible point")
    return verts


class Polytope:
    """Convex polytope in {x in Q^n : sum(x) = 0}.

    Construct with :func:`hull`, :meth:`from_vertices` or
    :meth:`from_inequalities`; treat instances as immutable values.
    """

    def __init__(self, n: int, vertices=None, facets=None, equalities=None, _vertex_thunk=None, _facet_thunk=None):
        self.n = n
        self._vertices = vertices
        self._facets = facets
        self._equalities = equalities
        self._vertex_thunk = _vertex_thunk
        self._facet_thunk = _facet_thunk
        self._polar = None
        self._aff = None
        self._int_cache = None
        self._float_cache = None

    # -- construction -----------------------------------------------------
    @classmethod
    def from_vertices(cls, vertices: Iterable[Sequence], n: int | None = None) -> "Polytope":
        """Trusts that ``vertices`` are the extreme points (use :func:`hull` otherwise)."""
        vs = sorted(set(_check_point(v) for v in vertices))
        if not vs:
            raise DegenerateInput("empty vertex list")
        n = len(vs[0]) if n is None else n
        if any(len(v) != n for v in vs):
            raise DimensionMismatch("vertices of different lengths")
        return cls(n, tuple(vs))

    @classmethod
    def from_inequalities(cls, n: int, facets: Iterable, equalities: Iterable = (), irredundant: bool = False):
        fs = tuple(sorted(Facet(tuple(int(c) for c in f[0]), Fraction(f[1])) for f in facets))
        es = tuple(sorted(Facet(tuple(int(c) for c in e[0]), Fraction(e[1])) for e in equalities))
        if irredundant:
            return cls(n, None, fs, es)
        verts = _vertices_from_h(n, fs, es)
        return cls.from_vertices(verts, n)

    # -- representations -----------------------------------------------------
    @property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        if self._vertices is None:
            if self._vertex_thunk is not None:
                vs = self._vertex_thunk()
                self._vertex_thunk = None
            else:
                vs = _vertices_from_h(self.n, self._facets, self._equalities)
            self._vertices = tuple(sorted(set(vs)))
        return self._vertices

    def _ensure_h(self):
        if self._facets is None:
            if self._facet_thunk is not None:
                fs, eqs = self._facet_thunk()
                self._facet_thunk = None
            else:
                _, fs, eqs, _ = _facets_of_points(self.vertices)
            self._facets = tuple(sorted(fs))
            self._equalities = tuple(sorted(eqs))

    @property
    def facets(self) -> tuple[Facet, ...]:
        self._ensure_h()
        return self._facets

    @property
    def equalities(self) -> tuple[Facet, ...]:
        self._ensure_h()
        return self._equalities

    @property
    def dim(self) -> int:
        return self.n - 1 - len(self.affine_equalities())

    def affine_equalities(self) -> tuple[Facet, ...]:
        """Equalities cutting out the affine hull, without enumerating facets."""
        if self._equalities is not None:
            return self._equalities
        if self._aff is None:
            self._aff = tuple(_Frame(self.vertices).equalities())
        return self._aff

    @property
    def is_full(self) -> bool:
        return self.dim == self.n - 1

    def h_representation(self) -> HRepresentation:
        return HRepresentation(self.facets, self.equalities, not self.is_full)

    # -- fast evaluation caches ------------------------------------------------
    def _ints(self):
        if self._int_cache is None:
            vs = self.vertices
            den = common_denominator(c for v in vs for c in v)
            self._int_cache = ([tuple(int(c * den) for c in v) for v in vs], den)
        return self._int_cache

    def _floats(self):
        if self._float_cache is None:
            self._float_cache = np.array([[float(c) for c in v] for v in self.vertices])
        return self._float_cache

    # -- value semantics ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.n == other.n and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.n, self.vertices))

    def __repr__(self):
        return f"Polytope(n={self.n}, vertices={len(self.vertices)})"

    def scaled(self, t) -> "Polytope":
        t = Fraction(t)
        if t <= 0:
            raise ValueError("scale factor must be positive")
        return Polytope(self.n, tuple(sorted(tuple(c * t for c in v) for v in self.vertices)))

    def negated(self) -> "Polytope":
        return Polytope(self.n, tuple(sorted(tuple(-c for c in v) for v in self.vertices)))

    def is_weyl_invariant(self) -> bool:
        return _weyl_closed(set(self.vertices))

    def origin_interior(self) -> bool:
        """Is 0 in the relative interior (and the affine hull a linear subspace)?"""
        if self._facets is not None and self._equalities is not None:
            return all(e.offset == 0 for e in self._equalities) and all(f.offset > 0 for f in self._facets)
        vs = self.vertices
        cent = [sum((v[j] for v in vs), Fraction(0)) for j in range(self.n)]
        if all(c == 0 for c in cent):
            return True
        m = len(vs)
        # maximize t subject to 0 = sum lam_i v_i, sum lam_i = 1, lam_i >= t
        A_eq = [[v[j] for v in vs] + [0] for j in range(self.n - 1)] + [[1] * m + [0]]
        b_eq = [0] * (self.n - 1) + [1]
        A_ub = [[-(i == k) for i in range(m)] + [1] for k in range(m)]
        c = [0] * m + [1]
        res = linprog_exact(c, A_ub, [0] * m, A_eq, b_eq)
        return res.status == OPTIMAL and res.value > 0


def _check_point(v) -> tuple[Fraction, ...]:
    p = as_rvec(v)
    if sum(p) != 0:
        raise MalformedInput(f"point {_fmt_vec(p)} does not sum to zero")
    return p


def _weyl_closed(pts: set) -> bool:
    for p in pts:
        for j in range(len(p) - 1):
            if p[j] != p[j + 1]:
                q = p[:j] + (p[j + 1], p[j]) + p[j + 2:]
                if q not in pts:
                    return False
    return True


def permutations_of(v: Sequence) -> set:
    return set(itertools.permutations(v))


def _prefix(v):
    out = []
    s = Fraction(0)
    for c in v[:-1]:
        s += c
        out.append(s)
    return out


def _majorized(z, w) -> bool:
    """z ≺ w for dominant sum-zero z, w (prefix sums of z bounded by those of w)."""
    return all(a <= b for a, b in zip(_prefix(z), _prefix(w)))


def chamber_extreme(y: tuple, candidates: Sequence[tuple]) -> bool:
    """Is the dominant point y extreme in conv(W.candidates)?

    y is extreme exactly when some regular dominant functional c has y as its
    unique maximizer among the dominant candidates; by rearrangement, such a c
    also separates y from every other point of the Weyl orbits. Writing
    c = sum mu_k omega_k with mu_k > 0 turns <c, y - s> into a positive
    combination of prefix sums, so the test is the LP
    ``max t : sum_k mu_k prefix_k(y - s) >= t, mu_k >= t, sum mu <= 1``.
    """
    others = [s for s in candidates if s != y]
    if not others:
        return True
    for s in others:
        if _majorized(y, s):
            return False
    k = len(y) - 1
    A_ub = []
    for s in others:
        pre = _prefix(tuple(a - b for a, b in zip(y, s)))
        A_ub.append([-p for p in pre] + [1])
    for j in range(k):
        A_ub.append([-(i == j) for i in range(k)] + [1])
    A_ub.append([1] * k + [0])
    b_ub = [0] * (len(others) + k) + [1]
    res = linprog_exact([0] * k + [1], A_ub, b_ub)
    return res.status == OPTIMAL and res.value > 0


def weyl_hull(points: Iterable[Sequence]) -> Polytope:
    """conv(W.points) for the symmetric group acting by coordinate permutation."""
    dom = sorted({tuple(sorted(_check_point(p), reverse=True)) for p in points})
    if not dom:
        raise DegenerateInput("empty point set")
    n = len(dom[0])
    if n > MAX_N:
        raise DimensionTooLarge(f"n = {n} exceeds {MAX_N}")
    ext = [y for y in dom if chamber_extreme(y, dom)]
    verts = set()
    for y in ext:
        verts |= permutations_of(y)
    return Polytope(n, tuple(sorted(verts)))


def hull(points: Iterable[Sequence]) -> Polytope:
    """Convex hull with an irredundant, lexicographically sorted vertex list."""
    pts = sorted({_check_point(p) for p in points})
    if not pts:
        raise DegenerateInput("empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionMismatch("points of different lengths")
    if n > MAX_N:
        raise DimensionTooLarge(f"n = {n} exceeds {MAX_N}")
    if len(pts) > MAX_POINTS:
        raise DimensionTooLarge(f"{len(pts)} points exceed {MAX_POINTS}")
    if len(pts) == 1:
        return Polytope(n, tuple(pts))
    if _weyl_closed(set(pts)):
        return weyl_hull(pts)
    frame, facets, eqs, masks = _facets_of_points(pts)
    if frame.dim == 0:
        return Polytope(n, (pts[0],))
    verts = []
    for i, m in enumerate(masks):
        if m == 0:
            continue
        if any(j != i and (mj & m) == m for j, mj in enumerate(masks)):
            continue
        verts.append(pts[i])
    return Polytope(n, tuple(verts), tuple(facets), tuple(eqs))


def h_representation(P: Polytope) -> HRepresentation:
    return P.h_representation()


def polar(P: Polytope) -> Polytope:
    """Polar body relative to the linear span of P (0 must be relatively interior).

    Vertices of P become facets of the polar and facets become vertices; each
    side is produced lazily from whichever description of P is available.
    """
    if P._polar is not None:
        return P._polar
    if not P.origin_interior():
        raise OriginNotInterior("0 is not in the relative interior")
    eqs = tuple(Facet(e.normal, Fraction(0)) for e in P.affine_equalities())

    def facets_from_vertices():
        fs = []
        for v in P.vertices:
            Nv = primitive(v)
            k = next(i for i, c in enumerate(Nv) if c != 0)
            fs.append(Facet(Nv, Fraction(Nv[k]) / v[k]))
        return fs, eqs

    def vertices_from_facets():
        return [tuple(Fraction(c) / f.offset for c in f.normal) for f in P.facets]

    Q = Polytope(P.n, None, None, None, _vertex_thunk=vertices_from_facets, _facet_thunk=facets_from_vertices)
    Q._aff = eqs
    if P._vertices is not None:
        # one facet per vertex: cheap, and it lets origin_interior(Q) skip enumeration
        Q._facets, Q._equalities = (tuple(sorted(x)) for x in facets_from_vertices())
        Q._facet_thunk = None
    P._polar = Q
    Q._polar = P
    return Q


def support(P: Polytope, x: Sequence):
    """max over vertices of <v, x>; exact for rational x, float for float x."""
    if len(x) != P.n:
        raise DimensionMismatch("direction has wrong length")
    if any(isinstance(c, (float, np.floating)) for c in x):
        return float(np.max(P._floats() @ np.asarray(x, dtype=float)))
    xs = as_rvec(x)
    dx = common_denominator(xs)
    xi = [int(c * dx) for c in xs]
    ints, den = P._ints()
    best = max(sum(a * b for a, b in zip(v, xi)) for v in ints)
    return Fraction(best, den * dx)


def gauge(P: Polytope, x: Sequence):
    """Minkowski gauge min{t >= 0 : x in tP}, evaluated as support(polar(P), x)."""
    Q = polar(P)
    xs = as_rvec(x) if not any(isinstance(c, (float, np.floating)) for c in x) else None
    if xs is not None:
        if sum(xs) != 0 or any(dot(e.normal, xs) != 0 for e in P.affine_equalities()):
            return float("inf")
        if all(c == 0 for c in xs):
            return Fraction(0)
    return support(Q, x)


def face(P: Polytope, x: Sequence) -> Polytope:
    xs = as_rvec(x)
    if all(c == 0 for c in _project_sum_zero(xs)):
        raise ZeroDirection("face needs a nonzero direction")
    vals = [dot(v, xs) for v in P.vertices]
    m = max(vals)
    return Polytope(P.n, tuple(v for v, a in zip(P.vertices, vals) if a == m))


def normal_cone(P: Polytope, y: Sequence) -> Cone:
    ys = as_rvec(y)
    if ys not in set(P.vertices):
        raise NotAVertex(f"{_fmt_vec(ys)} is not a vertex")
    gens = [f.normal for f in P.facets if dot(f.normal, ys) == f.offset]
    for e in P.equalities:
        gens.append(e.normal)
        gens.append(tuple(-c for c in e.normal))
    return Cone(ys, gens)


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.n != Q.n:
        raise DimensionMismatch("summands live in different dimensions")
    if P.is_weyl_invariant() and Q.is_weyl_invariant():
        dp = {tuple(sorted(v, reverse=True)) for v in P.vertices}
        dq = {tuple(sorted(v, reverse=True)) for v in Q.vertices}
        return weyl_hull(tuple(a + b for a, b in zip(p, q)) for p in dp for q in dq)
    return hull(tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices)


def contains(P: Polytope, x: Sequence) -> bool:
    """Exact LP membership of x in conv(vertices)."""
    xs = as_rvec(x)
    if len(xs) != P.n:
        raise DimensionMismatch("point has wrong length")
    if sum(xs) != 0:
        return False
    vs = P.vertices
    if xs in set(vs):
        return True
    m = len(vs)
    A_eq = [[v[j] for v in vs] for j in range(P.n - 1)] + [[1] * m]
    b_eq = list(xs[:-1]) + [1]
    res = linprog_exact([0] * m, A_eq=A_eq, b_eq=b_eq)
    return res.status == OPTIMAL


def contains_h(P: Polytope, x: Sequence) -> bool:
    """Membership through the facet description."""
    xs = as_rvec(x)
    if sum(xs) != 0:
        return False
    return all(dot(e.normal, xs) == e.offset for e in P.equalities) and all(
        dot(f.normal, xs) <= f.offset for f in P.facets
    )


# -- coordinate-equality subspaces -----------------------------------------------


def block_equalities(n: int, blocks: Sequence[Sequence[int]]) -> list[Facet]:
    """Equalities x_i = x_j for consecutive members of each block."""
    out = []
    for b in blocks:
        b = sorted(b)
        for i, j in zip(b, b[1:]):
            v = [0] * n
            v[i], v[j] = 1, -1
            out.append(Facet(tuple(v), Fraction(0)))
    return out


def project_to_blocks(v: Sequence, blocks: Sequence[Sequence[int]]) -> tuple[Fraction, ...]:
    """Orthogonal projection onto {x : x constant on each block}."""
    out = list(as_rvec(v))
    for b in blocks:
        m = sum((out[i] for i in b), Fraction(0)) / len(b)
        for i in b:
            out[i] = m
    return tuple(out)


def section(P: Polytope, blocks: Sequence[Sequence[int]]) -> Polytope:
    """P intersected with the coordinate-equality subspace given by blocks."""
    eqs = list(P.equalities) + block_equalities(P.n, blocks)
    verts = _vertices_from_h(P.n, P.facets, eqs)
    return hull(verts)


def projection(P: Polytope, blocks: Sequence[Sequence[int]]) -> Polytope:
    return hull(project_to_blocks(v, blocks) for v in P.vertices)
