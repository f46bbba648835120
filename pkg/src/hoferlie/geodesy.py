"""Lengths, distances and geodesic certificates for sampled paths in SU(n).

A sampled path gamma_0..gamma_m is read as the polygon of one-parameter
segments gamma_{k+1} = gamma_k exp(dt_k x_k); the speed x_k is attributed to
the left endpoint. A path is locally length minimizing for an invariant norm
exactly when one norming functional works for every speed, so for commuting
speeds the question reduces to an exact LP over the norm polytope.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import (
    adjoint,
    as_skew,
    as_unitary,
    commutes,
    group_exp,
    inner_product,
    joint_eigenbasis,
    principal_log_info,
    spectral_radius,
    spectrum,
)
from .config import DEFAULT, Tolerances
from .errors import BoundaryOfInjectivity, MalformedInput, NotCommuting, StepTooLarge
from .norms import (
    NormKind,
    OrbitFamily,
    hofer_polytope,
    injectivity_radius,
    majorizes,
    norm,
)
from .polytope import Polytope, contains, face, support
from .polytope.exact import dot
from .polytope.lp import OPTIMAL, linprog_exact
from .weyl import is_regular


# -- paths ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupPath:
    times: tuple
    points: tuple

    def __post_init__(self):
        t = tuple(float(s) for s in self.times)
        if len(t) != len(self.points) or len(t) < 2:
            raise MalformedInput("a path needs at least two samples and one time per sample")
        if any(b <= a for a, b in zip(t, t[1:])):
            raise MalformedInput("times must be strictly increasing")
        pts = tuple(as_unitary(p) for p in self.points)
        if len({p.shape for p in pts}) != 1:
            raise MalformedInput("points have different dimensions")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points[0].shape[0]

    @classmethod
    def one_parameter(cls, z, times, base=None) -> "GroupPath":
        z = np.asarray(z, dtype=complex)
        base = np.eye(z.shape[0], dtype=complex) if base is None else np.asarray(base, dtype=complex)
        return cls(tuple(times), tuple(base @ group_exp(t * z) for t in times))

    @classmethod
    def polygon(cls, speeds, times, base=None) -> "GroupPath":
        """Path gamma_{k+1} = gamma_k exp(dt_k x_k) starting at base."""
        n = np.asarray(speeds[0]).shape[0]
        g = np.eye(n, dtype=complex) if base is None else np.asarray(base, dtype=complex)
        pts = [g]
        for x, a, b in zip(speeds, times, times[1:]):
            g = g @ group_exp((b - a) * np.asarray(x, dtype=complex))
            pts.append(g)
        return cls(tuple(times), tuple(pts))


@dataclass(frozen=True)
class DerivativePath:
    """Speeds x_k on [t_k, t_{k+1}]; one fewer speed than times."""

    times: tuple
    derivatives: tuple

    def __post_init__(self):
        t = tuple(float(s) for s in self.times)
        if len(t) != len(self.derivatives) + 1 or not self.derivatives:
            raise MalformedInput("need len(times) == len(derivatives) + 1")
        if any(b <= a for a, b in zip(t, t[1:])):
            raise MalformedInput("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "derivatives", tuple(as_skew(x) for x in self.derivatives))

    @property
    def steps(self) -> np.ndarray:
        return np.diff(self.times)

    @property
    def n(self) -> int:
        return self.derivatives[0].shape[0]

    @classmethod
    def constant(cls, z, times) -> "DerivativePath":
        return cls(tuple(times), tuple(np.asarray(z, dtype=complex) for _ in times[1:]))


def log_derivatives(path: GroupPath, convention: str = "left", tol: Tolerances = DEFAULT) -> DerivativePath:
    """x_k = log(gamma_k^-1 gamma_{k+1}) / dt_k.

    With ``convention="right"`` the speeds are conjugated to
    gamma_k x_k gamma_k^-1, the right logarithmic derivative of the polygon at
    the left endpoint. Invariant norms and commutation do not see the
    difference.
    """
    if convention not in ("left", "right"):
        raise ValueError("convention must be 'left' or 'right'")
    out = []
    for k, (g, h) in enumerate(zip(path.points, path.points[1:])):
        try:
            info = principal_log_info(g.conj().T @ h, tol.eps_branch)
        except BoundaryOfInjectivity as exc:
            raise StepTooLarge(f"step {k} leaves the principal logarithm domain") from exc
        x = info.z / (path.times[k + 1] - path.times[k])
        out.append(adjoint(g, x) if convention == "right" else x)
    return DerivativePath(path.times, tuple(out))


def path_length(derivs: DerivativePath, E: OrbitFamily, kind: NormKind = NormKind.HOFER, scale=1.0) -> float:
    return float(sum(norm(E, x, kind, scale) * dt for x, dt in zip(derivs.derivatives, derivs.steps)))


def distance_segment(u, v, E: OrbitFamily, kind: NormKind = NormKind.HOFER, scale=1.0, tol: Tolerances = DEFAULT):
    """(||z||, z) with z = log(u^-1 v); the distance when z lies in the injectivity domain."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    z = principal_log_info(u.conj().T @ v, tol.eps_branch).z
    if spectral_radius(z) >= np.pi - tol.eps_branch:
        raise BoundaryOfInjectivity("log(u^-1 v) is too close to the boundary of the spectral ball")
    return norm(E, z, kind, scale), z


# -- certificates ---------------------------------------------------------------------


class Verdict(enum.Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


class Method(enum.Enum):
    COMMUTING_LP = "commuting-lp"
    REGULAR_ORBIT_CHAMBER = "regular-orbit-chamber"
    HEURISTIC_SEARCH = "heuristic-search"


@dataclass(frozen=True)
class GeodesicCertificate:
    verdict: Verdict
    method: Method
    functional: tuple | None = None
    plus_witnesses: tuple | None = None
    minus_witnesses: tuple | None = None
    coordinates: tuple = ()
    norms: tuple = ()
    snap_error: float = 0.0
    residual: float | None = None
    basis: np.ndarray | None = field(default=None, compare=False, repr=False)
    note: str = ""

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED

    def replay(self, E: OrbitFamily, kind: NormKind) -> bool:
        """Re-check a CommutingLP certificate from its own data, exactly."""
        if self.functional is None:
            return False
        P = hofer_polytope(E, kind)
        if not contains(P, self.functional):
            return False
        return all(dot(self.functional, v) == norm(E, v, kind) for v in self.coordinates)


def snap_coordinates(values: Sequence[float], tol: Tolerances = DEFAULT) -> tuple[tuple, float]:
    """Rationalize a float Cartan vector on the grid 1/snap_den.

    Values within the clustering threshold are first merged, so repeated
    eigenvalues stay exactly equal; the last cluster absorbs the sum residual.
    """
    vals = np.asarray(values, dtype=float)
    n = len(vals)
    thresh = tol.eps_cluster * (1.0 + float(np.max(np.abs(vals))))
    order = np.argsort(-vals, kind="stable")
    clusters = [[order[0]]]
    for a, b in zip(order, order[1:]):
        if vals[a] - vals[b] <= thresh:
            clusters[-1].append(b)
        else:
            clusters.append([b])
    den = tol.snap_den
    out = [Fraction(0)] * n
    for c in clusters[:-1]:
        q = Fraction(round(float(np.mean(vals[c])) * den), den)
        for j in c:
            out[j] = q
    last = clusters[-1]
    rest = sum(out, Fraction(0))
    for j in last:
        out[j] = -rest / len(last)
    err = max(abs(float(o) - v) for o, v in zip(out, vals))
    return tuple(out), err


def _rational_coordinates(derivs: DerivativePath, tol: Tolerances):
    u, coords = joint_eigenbasis(derivs.derivatives, tol.eps_mat, tol.eps_cluster)
    snapped, err = [], 0.0
    for c in coords:
        s, e = snap_coordinates(c, tol)
        snapped.append(s)
        err = max(err, e)
    return u, snapped, err


def _intersect_faces(P: Polytope, directions) -> Polytope | None:
    """Common maximizers over P of every direction, or None when there are none."""
    G = P
    for v in directions:
        if all(c == 0 for c in v):
            continue
        if support(G, v) != support(P, v):
            return None
        G = face(G, v)
    return G


def _witness_pair(E: OrbitFamily, kind: NormKind, vs):
    """Common argmax / argmin witness faces for the kind (None when empty)."""
    neg = [tuple(-c for c in v) for v in vs]
    if kind is NormKind.HOFER:
        Pp = hofer_polytope(E, NormKind.ONE_SIDED_PLUS)
        return _intersect_faces(Pp, vs), _intersect_faces(Pp, neg)
    if kind is NormKind.ONE_SIDED_MINUS:
        Pp = hofer_polytope(E, NormKind.ONE_SIDED_PLUS)
        return _zero(E.n), _intersect_faces(Pp, neg)
    return _intersect_faces(hofer_polytope(E, kind), vs), _zero(E.n)


def _zero(n):
    return Polytope(n, (tuple(Fraction(0) for _ in range(n)),))


def _lp_functional(P: Polytope, vs, targets):
    """A point a of P with <a, v_k> = target_k for every k (exact LP), or None."""
    nz = [(v, t) for v, t in zip(vs, targets) if any(c != 0 for c in v)]
    if not nz:
        return P.vertices[0]
    F = face(P, nz[0][0])
    verts = F.vertices
    m = len(verts)
    A_eq = [[1] * m]
    b_eq = [1]
    for v, t in nz[1:]:
        A_eq.append([dot(w, v) for w in verts])
        b_eq.append(t)
    res = linprog_exact([0] * m, A_eq=A_eq, b_eq=b_eq)
    if res.status != OPTIMAL:
        return None
    return tuple(sum((lam * w[j] for lam, w in zip(res.x, verts)), Fraction(0)) for j in range(P.n))


def certify_commuting(
    derivs: DerivativePath, E: OrbitFamily, kind: NormKind = NormKind.HOFER, tol: Tolerances = DEFAULT
) -> GeodesicCertificate:
    """Exact certificate for a commuting family of speeds.

    The speeds are diagonalized in one basis and their coordinates v_k
    rationalized; the path is certified iff some a in the kind's polytope has
    <a, v_k> = ||v_k|| for all k. Raises NotCommuting otherwise.
    """
    kind = NormKind.parse(kind)
    u, vs, err = _rational_coordinates(derivs, tol)
    P = hofer_polytope(E, kind)
    targets = [norm(E, v, kind) for v in vs]
    a = _lp_functional(P, vs, targets)
    plus, minus = _witness_pair(E, kind, vs)
    by_faces = plus is not None and minus is not None
    if by_faces != (a is not None):
        raise RuntimeError("LP certificate and face-intersection witnesses disagree")
    verdict = Verdict.CERTIFIED if a is not None else Verdict.REFUTED
    return GeodesicCertificate(
        verdict,
        Method.COMMUTING_LP,
        functional=a,
        plus_witnesses=plus.vertices if plus is not None else None,
        minus_witnesses=minus.vertices if minus is not None else None,
        coordinates=tuple(vs),
        norms=tuple(targets),
        snap_error=err,
        basis=u,
    )


def common_ordering(vs) -> list[int] | None:
    """A permutation making every vector weakly decreasing, or None (eigenvalue crossing)."""
    n = len(vs[0])
    before = [set() for _ in range(n)]
    indeg = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and any(v[i] > v[j] for v in vs):
                if any(v[i] < v[j] for v in vs):
                    return None
                before[i].add(j)
    for i in range(n):
        for j in before[i]:
            indeg[j] += 1
    order, ready = [], [i for i in range(n) if indeg[i] == 0]
    while ready:
        i = ready.pop(0)
        order.append(i)
        for j in sorted(before[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    return order if len(order) == n else None


def certify_regular_orbit(derivs: DerivativePath, E: OrbitFamily, tol: Tolerances = DEFAULT) -> GeodesicCertificate:
    """Chamber test for a single regular orbit: commuting speeds with non-crossing eigenvalues.

    The verdict is cross-checked against :func:`certify_commuting` on the Hofer kind.
    """
    if len(E.vertices) != 1 or not is_regular(E.vertices[0]):
        raise MalformedInput("the chamber test needs a single regular orbit")
    try:
        u, vs, err = _rational_coordinates(derivs, tol)
    except NotCommuting as exc:
        return GeodesicCertificate(Verdict.REFUTED, Method.REGULAR_ORBIT_CHAMBER, note=str(exc))
    order = common_ordering(vs)
    verdict = Verdict.CERTIFIED if order is not None else Verdict.REFUTED
    lp = certify_commuting(derivs, E, NormKind.HOFER, tol)
    if lp.verdict is not verdict:
        raise RuntimeError("chamber test and LP certificate disagree")
    functional = None
    if order is not None:
        # lambda - w*.lambda placed along the common ordering
        y = E.vertices[0]
        d = [a - b for a, b in zip(y, reversed(y))]
        functional = [Fraction(0)] * E.n
        for pos, j in enumerate(order):
            functional[j] = d[pos]
        functional = tuple(functional)
    return GeodesicCertificate(
        verdict,
        Method.REGULAR_ORBIT_CHAMBER,
        functional=functional,
        coordinates=tuple(vs),
        norms=lp.norms,
        snap_error=err,
        basis=u,
    )


# -- non-commuting families ------------------------------------------------------------


def _one_sided_float(E: OrbitFamily, x):
    s = spectrum(x).values
    V = E.float_vertices()
    return float(np.max(V @ s)), float(-np.min(V @ s[::-1]))


def _best_orbit_point(candidates: np.ndarray, S: np.ndarray, xs, targets, sign: int):
    """Best y = U diag(c) U* over candidate dominant vectors c, U ordered by S."""
    sp = spectrum(S)
    U = sp.basis if sign > 0 else sp.basis[:, ::-1]
    best = None
    for c in candidates:
        y = 1j * (U * c) @ U.conj().T
        gaps = np.array([t - sign * inner_product(y, x) for x, t in zip(xs, targets)])
        r = float(np.max(np.abs(gaps)))
        if best is None or r < best[0]:
            best = (r, y, gaps)
    return best


def heuristic_certify(
    derivs: DerivativePath,
    E: OrbitFamily,
    kind: NormKind = NormKind.HOFER,
    restarts: int = 100,
    seed: int = 0,
    threshold: float = 1e-7,
) -> GeodesicCertificate:
    """Search for common maximizer / minimizer orbit points of non-commuting speeds.

    Each restart draws positive weights, aligns an orbit point with the
    eigenbasis of the weighted sum of speeds, and reweights toward the worst
    served speed. Certified when the residual drops below ``threshold``
    (relative to 1 + max norm); Inconclusive otherwise.
    """
    kind = NormKind.parse(kind)
    xs = [np.asarray(x) for x in derivs.derivatives]
    rng = np.random.default_rng(seed)
    V = E.float_vertices()
    negV = -V[:, ::-1]
    hp_hm = [_one_sided_float(E, x) for x in xs]
    scale = 1.0 + max(max(a, b) for a, b in hp_hm)

    # each side is (candidate dominant vectors, targets, sign); sign -1 minimizes <y, x>
    plus_side = (V, [a for a, _ in hp_hm], 1)
    minus_side = (V, [b for _, b in hp_hm], -1)
    if kind is NormKind.HOFER:
        sides = [plus_side, minus_side]
    elif kind is NormKind.ONE_SIDED_PLUS:
        sides = [plus_side]
    elif kind is NormKind.ONE_SIDED_MINUS:
        sides = [minus_side]
    else:
        sides = [(np.vstack([V, negV]), [max(a, b) for a, b in hp_hm], 1)]

    best_total = np.inf
    for _ in range(restarts):
        w = rng.uniform(0.1, 1.0, len(xs))
        total = 0.0
        for cand, targets, sign in sides:
            ww = w.copy()
            best = np.inf
            for _it in range(20):
                S = sum(wk * x for wk, x in zip(ww, xs))
                r, _y, gaps = _best_orbit_point(cand, S, xs, targets, sign)
                best = min(best, r)
                if r < threshold * scale:
                    break
                ww = ww * (1.0 + np.abs(gaps) / scale)
            total = max(total, best)
        best_total = min(best_total, total)
        if best_total < threshold * scale:
            break
    rel = best_total / scale
    verdict = Verdict.CERTIFIED if rel < threshold else Verdict.INCONCLUSIVE
    return GeodesicCertificate(verdict, Method.HEURISTIC_SEARCH, residual=rel, note=f"{restarts} restarts")


def is_commuting_family(derivs: DerivativePath, tol: Tolerances = DEFAULT) -> bool:
    xs = derivs.derivatives
    return all(commutes(xs[i], xs[j], tol.eps_mat) for i in range(len(xs)) for j in range(i + 1, len(xs)))


# -- quasi-autonomy ---------------------------------------------------------------------


@dataclass(frozen=True)
class QuasiAutonomyReport:
    certified: bool
    plus_witnesses: tuple | None
    minus_witnesses: tuple | None
    coordinates: tuple

    @property
    def quasi_autonomous(self) -> bool:
        return self.plus_witnesses is not None and self.minus_witnesses is not None


def quasi_autonomy_report(
    derivs: DerivativePath, E: OrbitFamily, kind: NormKind = NormKind.HOFER, tol: Tolerances = DEFAULT
) -> QuasiAutonomyReport:
    """Fixed common maximizers / minimizers of the speeds, when they exist."""
    cert = certify_commuting(derivs, E, kind, tol)
    rep = QuasiAutonomyReport(cert.certified, cert.plus_witnesses, cert.minus_witnesses, cert.coordinates)
    if rep.quasi_autonomous != rep.certified:
        raise RuntimeError("witness intersection disagrees with the LP verdict")
    return rep


# -- theorem checks ---------------------------------------------------------------------


@dataclass
class CheckReport:
    ok: bool = True
    failures: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def fail(self, what: str, **info):
        self.ok = False
        self.failures.append({"check": what, **info})


def _battery_norms(battery, x):
    return [norm(E, x, kind) for E, kind in battery]


def check_exponential_theorem(w, battery, tol: Tolerances = DEFAULT, slack: float = 1e-9, interior_margin: float = 0.05):
    """z = log exp(w) commutes with w, is majorized by w, and has no larger norm."""
    w = as_skew(w)
    z = principal_log_info(group_exp(w), tol.eps_branch).z
    rep = CheckReport(data={"z": z})
    if not commutes(z, w, tol.eps_mat):
        rep.fail("commutes", bracket=float(np.linalg.norm(z @ w - w @ z)))
    if not majorizes(w, z, tol.eps_mat):
        rep.fail("majorizes")
    for (E, kind), a, b in zip(battery, _battery_norms(battery, z), _battery_norms(battery, w)):
        if a > b + slack:
            rep.fail("norm", kind=kind.value, vertices=str(E.vertices), z_norm=a, w_norm=b)
    if spectral_radius(w) < np.pi - interior_margin:
        d = float(np.linalg.norm(z - w))
        if d > 1e-9 * (1.0 + np.linalg.norm(w)):
            rep.fail("identity", error=d)
    return rep


def check_product_exponentials(x, y, battery, tol: Tolerances = DEFAULT, slack: float = 1e-9):
    """z = log(exp x exp y) satisfies z ≺ x + y and ||z|| <= ||x + y||."""
    x, y = as_skew(x), as_skew(y)
    z = principal_log_info(group_exp(x) @ group_exp(y), tol.eps_branch).z
    s = x + y
    rep = CheckReport(data={"z": z})
    if not majorizes(s, z, tol.eps_mat):
        rep.fail("majorizes")
    for (E, kind), a, b in zip(battery, _battery_norms(battery, z), _battery_norms(battery, s)):
        if a > b + slack:
            rep.fail("norm", kind=kind.value, vertices=str(E.vertices), z_norm=a, sum_norm=b)
    if commutes(x, y, tol.eps_mat) and spectral_radius(s) < np.pi - tol.eps_branch:
        d = float(np.linalg.norm(z - s))
        if d > 1e-9 * (1.0 + np.linalg.norm(s)):
            rep.fail("identity", error=d)
    return rep


def check_exp_metric_decreasing(v, w, E: OrbitFamily, kind: NormKind = NormKind.HOFER, tol: Tolerances = DEFAULT, slack: float = 1e-9):
    """dist(exp v, exp w) <= ||w - v||, with equality for close commuting pairs."""
    v, w = as_skew(v), as_skew(w)
    kind = NormKind.parse(kind)
    d, _ = distance_segment(group_exp(v), group_exp(w), E, kind, tol=tol)
    bound = norm(E, w - v, kind)
    rep = CheckReport(data={"distance": d, "bound": bound})
    if d > bound + slack:
        rep.fail("decreasing", distance=d, bound=bound)
    if commutes(v, w, tol.eps_mat) and bound < injectivity_radius(E, kind) * (1 - 1e-6):
        if abs(d - bound) > slack * (1.0 + bound):
            rep.fail("equality", distance=d, bound=bound)
    return rep


def competitor_length(points, E: OrbitFamily, kind: NormKind = NormKind.HOFER, tol: Tolerances = DEFAULT) -> float:
    """Length of the polygon of one-parameter segments through the given group points."""
    total = 0.0
    for g, h in zip(points, points[1:]):
        z = principal_log_info(np.asarray(g).conj().T @ h, tol.eps_branch).z
        total += norm(E, z, kind)
    return total
