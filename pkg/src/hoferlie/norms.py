"""Generalized Hofer norms on su(n) and their Weyl-invariant polytopes.

An :class:`OrbitFamily` is an Ad-invariant compact set E described by dominant
Cartan vectors x_1..x_k (a union of coadjoint orbits, or the orbits swept by
the convex hull of the x_i). For x with dominant spectrum xi,

    h+(x) = max over E of <y, x> = max_i sum_j x_i[j] xi[j]
    h-(x) = -min over E of <y, x> = -min_i sum_j x_i[j] xi[n-1-j]

and the four norm kinds are h+ + h-, max(h+, h-), h+ and h-. Restricted to
the Cartan subalgebra each norm is the support function of a Weyl-invariant
polytope P built from the orbits, so its unit ball there is the polar of P.
"""
from __future__ import annotations

import enum
import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import spectrum
from .config import EPS_MAT
from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    MalformedInput,
    NotDominant,
    NotFull,
    ZeroVector,
)
from .polytope import (
    Facet,
    Polytope,
    contains,
    face,
    gauge,
    hull,
    polar,
    support,
    weyl_hull,
)
from .polytope.exact import as_rvec, common_denominator, dot, primitive, rank
from .weyl import is_dominant, is_regular, is_symmetric, prefix_sums, stabilizer_blocks

MAX_POLYTOPE_N = 6


class NormKind(enum.Enum):
    HOFER = "hofer"
    SECOND = "second"
    ONE_SIDED_PLUS = "one-sided-plus"
    ONE_SIDED_MINUS = "one-sided-minus"

    @classmethod
    def parse(cls, s) -> "NormKind":
        if isinstance(s, cls):
            return s
        key = str(s).strip().lower().replace("_", "-")
        for k in cls:
            if k.value == key or k.name.lower().replace("_", "-") == key:
                return k
        raise MalformedInput(f"unknown norm kind {s!r}")


class Mode(enum.Enum):
    KIRWAN_HULL = "kirwan_hull"
    DISCRETE_UNION = "discrete_union"


ALL_KINDS = tuple(NormKind)


def _neg_rev(v):
    return tuple(-c for c in reversed(v))


def family_is_full(vertices: Sequence[tuple], n: int) -> bool:
    """Do the Weyl orbits of the vertices affinely span the sum-zero hyperplane?

    Each orbit has centroid 0, so the affine span of the union is the linear
    span of the orbit points; the differences v - (jk).v already generate it.
    """
    vecs = []
    for v in vertices:
        for j in range(n):
            for k in range(j + 1, n):
                if v[j] != v[k]:
                    w = list(v)
                    w[j], w[k] = w[k], w[j]
                    vecs.append([a - b for a, b in zip(v, w)])
    return bool(vecs) and rank(vecs) == n - 1


@dataclass(frozen=True)
class OrbitFamily:
    """Ad-invariant set E given by dominant vertices of A = E ∩ h+."""

    n: int
    vertices: tuple
    mode: Mode = Mode.KIRWAN_HULL

    def __post_init__(self):
        mode = Mode(self.mode) if not isinstance(self.mode, Mode) else self.mode
        object.__setattr__(self, "mode", mode)
        vs = []
        for v in self.vertices:
            r = as_rvec(v)
            if len(r) != self.n:
                raise DimensionMismatch(f"vertex {v} has length {len(r)}, expected {self.n}")
            if sum(r) != 0:
                raise MalformedInput(f"vertex {v} does not sum to zero")
            if not is_dominant(r):
                raise NotDominant(f"vertex {v} is not weakly decreasing")
            vs.append(r)
        if not vs:
            raise MalformedInput("an orbit family needs at least one vertex")
        vs = sorted(set(vs), reverse=True)
        if mode is Mode.KIRWAN_HULL and len(vs) > 2:
            vs = sorted(hull(vs).vertices, reverse=True)
        object.__setattr__(self, "vertices", tuple(vs))
        if not family_is_full(vs, self.n):
            raise NotFull("the orbits do not span the sum-zero hyperplane")

    @classmethod
    def from_points(cls, points, mode: Mode = Mode.KIRWAN_HULL) -> "OrbitFamily":
        """Build from arbitrary Cartan vectors, moving each to the dominant chamber."""
        pts = [tuple(sorted(as_rvec(p), reverse=True)) for p in points]
        return cls(len(pts[0]), tuple(pts), mode)

    @classmethod
    def orbit(cls, v) -> "OrbitFamily":
        return cls.from_points([v])

    def negated(self) -> "OrbitFamily":
        return OrbitFamily(self.n, tuple(_neg_rev(v) for v in self.vertices), self.mode)

    def float_vertices(self) -> np.ndarray:
        return np.array([[float(c) for c in v] for v in self.vertices])

    @property
    def is_symmetric(self) -> bool:
        """E = -E."""
        return hofer_polytope(self, NormKind.ONE_SIDED_PLUS) == hofer_polytope(self, NormKind.ONE_SIDED_MINUS)


# -- closed form -----------------------------------------------------------------


def _dominant_spectrum(x):
    """Dominant eigenvalue vector of x: exact tuple for Cartan vectors, floats for matrices."""
    if isinstance(x, np.ndarray) and x.ndim == 2:
        return tuple(float(c) for c in spectrum(x).values), False
    if any(isinstance(c, (float, np.floating)) for c in x):
        v = np.asarray(x, dtype=float)
        return tuple(sorted((v - v.mean()).tolist(), reverse=True)), False
    r = as_rvec(x)
    if sum(r) != 0:
        raise MalformedInput("Cartan vector must sum to zero")
    return tuple(sorted(r, reverse=True)), True


def one_sided_values(E: OrbitFamily, x):
    """(h+(x), h-(x)) by the rearrangement closed form."""
    xi, exact = _dominant_spectrum(x)
    if len(xi) != E.n:
        raise DimensionMismatch(f"expected dimension {E.n}, got {len(xi)}")
    if exact:
        xr = xi[::-1]
        hp = max(dot(v, xi) for v in E.vertices)
        hm = -min(dot(v, xr) for v in E.vertices)
        return hp, hm
    V = E.float_vertices()
    a = np.asarray(xi)
    return float(np.max(V @ a)), float(-np.min(V @ a[::-1]))


def combine(kind: NormKind, hp, hm):
    if kind is NormKind.HOFER:
        return hp + hm
    if kind is NormKind.SECOND:
        return max(hp, hm)
    if kind is NormKind.ONE_SIDED_PLUS:
        return hp
    return hm


def norm(E: OrbitFamily, x, kind: NormKind = NormKind.HOFER, scale=1):
    """Value of the kind's norm at x (matrix or Cartan vector).

    Exact ``Fraction`` for rational Cartan vectors with rational scale, float
    otherwise.
    """
    kind = NormKind.parse(kind)
    hp, hm = one_sided_values(E, x)
    val = combine(kind, hp, hm)
    if isinstance(val, Fraction) and not isinstance(scale, float):
        return val * Fraction(scale)
    return float(val) * float(scale)


def norm_brute_force(E: OrbitFamily, x, kind: NormKind = NormKind.HOFER):
    """Same value by maximizing over every permutation of every vertex (n <= 8)."""
    kind = NormKind.parse(kind)
    xi, exact = _dominant_spectrum(x)
    if not exact:
        vals = [sum(a * b for a, b in zip(p, xi)) for v in E.vertices for p in itertools.permutations(v)]
        return combine(kind, max(vals), -min(vals))
    # integer arithmetic after clearing denominators
    dv = common_denominator(c for v in E.vertices for c in v)
    dx = common_denominator(xi)
    xs = [int(c * dx) for c in xi]
    vals = [sum(a * b for a, b in zip(p, xs)) for v in E.vertices for p in itertools.permutations([int(c * dv) for c in v])]
    return combine(kind, Fraction(max(vals), dv * dx), Fraction(-min(vals), dv * dx))


# -- polytopes ---------------------------------------------------------------------


def _generators(E: OrbitFamily, kind: NormKind):
    X = E.vertices
    N = [_neg_rev(v) for v in X]
    if kind is NormKind.HOFER:
        # w.x_i - w'.x_j has dominant representatives x_i - w*.x_j among its extreme points
        return [tuple(a + b for a, b in zip(x, y)) for x in X for y in N]
    if kind is NormKind.SECOND:
        return list(X) + N
    if kind is NormKind.ONE_SIDED_PLUS:
        return list(X)
    return N


@functools.lru_cache(maxsize=4096)
def _cached_polytope(vertices: tuple, kind: NormKind) -> Polytope:
    E = OrbitFamily.__new__(OrbitFamily)
    object.__setattr__(E, "n", len(vertices[0]))
    object.__setattr__(E, "vertices", vertices)
    object.__setattr__(E, "mode", Mode.KIRWAN_HULL)
    return weyl_hull(_generators(E, kind))


def hofer_polytope(E: OrbitFamily, kind: NormKind = NormKind.HOFER) -> Polytope:
    """Weyl-invariant polytope whose support function is the norm on the Cartan subalgebra."""
    kind = NormKind.parse(kind)
    if E.n > MAX_POLYTOPE_N:
        raise DimensionTooLarge(f"polytopes are limited to n <= {MAX_POLYTOPE_N}")
    return _cached_polytope(E.vertices, kind)


def unit_ball_cartan(E: OrbitFamily, kind: NormKind = NormKind.HOFER, scale=1) -> Polytope:
    """Unit ball of the norm intersected with the Cartan subalgebra."""
    P = hofer_polytope(E, kind)
    if scale != 1:
        P = P.scaled(scale)
    return polar(P)


def permutohedron(v) -> Polytope:
    return weyl_hull([as_rvec(v)])


# -- norming functionals ------------------------------------------------------------


def _centroid(P: Polytope):
    m = len(P.vertices)
    return tuple(sum((v[j] for v in P.vertices), Fraction(0)) / m for j in range(P.n))


def _zero_polytope(n):
    return Polytope.from_vertices([tuple(Fraction(0) for _ in range(n))])


@dataclass(frozen=True)
class NormingCertificate:
    plus_face: Polytope
    minus_face: Polytope
    functional: tuple
    value: Fraction
    kind: NormKind

    def check(self, E: OrbitFamily, x) -> bool:
        """<a, x> equals the norm and a lies on the boundary of the dual ball."""
        x = as_rvec(x)
        dual = hofer_polytope(E, self.kind)
        return dot(self.functional, x) == norm(E, x, self.kind) and gauge(dual, self.functional) == 1


def _require_dominant_nonzero(x):
    xs = as_rvec(x)
    if sum(xs) != 0:
        raise MalformedInput("Cartan vector must sum to zero")
    if all(c == 0 for c in xs):
        raise ZeroVector("x must be nonzero")
    if not is_dominant(xs):
        raise NotDominant("x must be dominant")
    return xs


def norming_certificate(E: OrbitFamily, x, kind: NormKind = NormKind.HOFER) -> NormingCertificate:
    """Faces of argmax (y+) and argmin (y-) points and the functional a = y+ - y-.

    The functional sampled is the difference of the face centroids; any choice
    from the two faces norms x.
    """
    kind = NormKind.parse(kind)
    xs = _require_dominant_nonzero(x)
    neg = tuple(-c for c in xs)
    zero = _zero_polytope(E.n)
    if kind is NormKind.HOFER:
        Pp = hofer_polytope(E, NormKind.ONE_SIDED_PLUS)
        plus, minus = face(Pp, xs), face(Pp, neg)
        a = tuple(p - m for p, m in zip(_centroid(plus), _centroid(minus)))
    else:
        plus, minus = face(hofer_polytope(E, kind), xs), zero
        a = _centroid(plus)
    return NormingCertificate(plus, minus, a, norm(E, xs, kind), kind)


# -- majorization ----------------------------------------------------------------------


def _spectra_pair(w, z):
    a, ea = _dominant_spectrum(w)
    b, eb = _dominant_spectrum(z)
    if len(a) != len(b):
        raise DimensionMismatch("spectra of different lengths")
    return a, b, ea and eb


def majorizes_by_partial_sums(w, z, tol: float = EPS_MAT) -> bool:
    a, b, exact = _spectra_pair(w, z)
    pa, pb = prefix_sums(a), prefix_sums(b)
    if exact:
        return all(x <= y for x, y in zip(pb, pa))
    scale = 1.0 + max(abs(c) for c in a + b)
    return all(x <= y + tol * scale for x, y in zip(pb, pa))


def majorizes_by_hull(w, z) -> bool:
    """Membership of the spectrum of z in the permutohedron of the spectrum of w (exact LP)."""
    a, b, exact = _spectra_pair(w, z)
    if not exact:
        a, b = as_rvec(a), as_rvec(b)
        b = b[:-1] + (-sum(b[:-1]),)
        a = a[:-1] + (-sum(a[:-1]),)
    return contains(permutohedron(a), b)


def majorizes(w, z, tol: float = EPS_MAT) -> bool:
    """z ≺ w: z lies in the convex hull of the adjoint orbit of w.

    Partial sums of dominant spectra decide; on exact input the permutohedron
    membership LP is evaluated as well and the two must agree.
    """
    verdict = majorizes_by_partial_sums(w, z, tol)
    _, _, exact = _spectra_pair(w, z)
    if exact and len(_dominant_spectrum(w)[0]) <= MAX_POLYTOPE_N:
        lp = majorizes_by_hull(w, z)
        if lp != verdict:
            raise RuntimeError("partial-sum and hull majorization disagree")
    return verdict


def ad_spectrum(v) -> tuple:
    """Eigenvalues of ad(i diag v) on gl(n): all differences v_j - v_k, decreasing."""
    xi, _ = _dominant_spectrum(v)
    return tuple(sorted((a - b for a in xi for b in xi), reverse=True))


def majorizes_ad(w, z, tol: float = EPS_MAT) -> bool:
    """Majorization of the ad-eigenvalue strings."""
    a, b = ad_spectrum(w), ad_spectrum(z)
    exact = not any(isinstance(c, float) for c in a + b)
    pa, pb = prefix_sums(a), prefix_sums(b)
    if exact:
        return all(x <= y for x, y in zip(pb, pa))
    scale = 1.0 + max(abs(c) for c in a + b)
    return all(x <= y + tol * scale for x, y in zip(pb, pa))


# -- faces and regularity ------------------------------------------------------------------


def face_of_ball(E: OrbitFamily, x, kind: NormKind = NormKind.HOFER):
    """Cartan part F_x(B ∩ h) ∩ h+ of the face of the unit ball, and the blocks of Z(x).

    The face is cut out of the ball's facet description (one facet per vertex
    of P) by the supporting equality <x, y> = gauge_P(x) and the chamber
    inequalities.
    """
    kind = NormKind.parse(kind)
    xs = _require_dominant_nonzero(x)
    n = E.n
    P = hofer_polytope(E, kind)
    ball = polar(P)
    level = support(ball, xs)
    facets = list(ball.facets)
    for j in range(n - 1):
        nrm = [0] * n
        nrm[j], nrm[j + 1] = -1, 1
        facets.append(Facet(tuple(nrm), Fraction(0)))
    px = primitive(xs)
    k = next(i for i, c in enumerate(px) if c != 0)
    eq = Facet(px, level * Fraction(px[k]) / xs[k])
    part = Polytope.from_inequalities(n, facets, [eq])
    return part, stabilizer_blocks(xs)


@dataclass(frozen=True)
class RegularityVerdict:
    value: bool
    witness: tuple | None = None
    extreme_orbits: tuple = field(default=())

    def __bool__(self):
        return self.value


def dominant_extreme_points(P: Polytope) -> tuple:
    return tuple(sorted({tuple(sorted(v, reverse=True)) for v in P.vertices}, reverse=True))


def has_abelian_faces(E: OrbitFamily, kind: NormKind = NormKind.HOFER) -> RegularityVerdict:
    """True iff every extreme point of the kind's polytope is regular."""
    kind = NormKind.parse(kind)
    dom = dominant_extreme_points(hofer_polytope(E, kind))
    for y in dom:
        if not is_regular(y):
            return RegularityVerdict(False, y, dom)
    return RegularityVerdict(True, None, dom)


def weyl_chamber_norm_test(E: OrbitFamily, kind: NormKind = NormKind.HOFER):
    """y when ext(P) = W.y with y dominant, regular and symmetric; else None."""
    dom = dominant_extreme_points(hofer_polytope(E, NormKind.parse(kind)))
    if len(dom) != 1:
        return None
    y = dom[0]
    if is_regular(y) and is_symmetric(y):
        return y
    return None


def injectivity_radius(E: OrbitFamily, kind: NormKind = NormKind.HOFER, scale=1) -> float:
    """Largest r with r·(unit ball ∩ h) inside the open spectral ball of radius pi.

    The coordinate functional y -> y_1 on the sum-zero hyperplane is
    represented by p = e_1 - (1/n)·1, and its maximum over the unit ball is
    the gauge of P at p; Weyl invariance makes the first coordinate enough.
    """
    kind = NormKind.parse(kind)
    P = hofer_polytope(E, kind)
    if scale != 1:
        P = P.scaled(scale)
    n = E.n
    p = tuple(Fraction(int(j == 0)) - Fraction(1, n) for j in range(n))
    m = tuple(-c for c in p)
    bound = max(gauge(P, p), gauge(P, m))
    return math.pi / float(bound)


def family_from_ball(B: Polytope) -> OrbitFamily:
    """Family E = (1/2)·B° whose Hofer norm has unit ball section B."""
    Q = polar(B)
    pts = {tuple(sorted((c / 2 for c in v), reverse=True)) for v in Q.vertices}
    return OrbitFamily(B.n, tuple(pts), Mode.DISCRETE_UNION)
