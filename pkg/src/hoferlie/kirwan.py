"""Decisions driven by Kirwan-polytope data.

Input is the dominant part A of a moment image, given by its vertices. From it
we decide whether short curves must have commuting Hamiltonians (all extreme
points of the norm polytope regular), whether the norm is that of a single
regular orbit, and how these verdicts behave under products of actions.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DimensionMismatch, MalformedInput
from .norms import (
    Mode,
    NormKind,
    OrbitFamily,
    dominant_extreme_points,
    has_abelian_faces,
    hofer_polytope,
    weyl_chamber_norm_test,
)
from .polytope import minkowski_sum
from .polytope.exact import as_rvec
from .weyl import is_regular, prefix_sums

DICHOTOMY_KINDS = (NormKind.HOFER, NormKind.SECOND, NormKind.ONE_SIDED_PLUS)


@dataclass(frozen=True)
class KirwanInput:
    n: int
    vertices: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(as_rvec(v) for v in self.vertices))

    @property
    def family(self) -> OrbitFamily:
        return OrbitFamily(self.n, self.vertices, Mode.KIRWAN_HULL)

    @classmethod
    def from_family(cls, E: OrbitFamily, label: str = "") -> "KirwanInput":
        return cls(E.n, E.vertices, label)


@dataclass(frozen=True)
class KindVerdict:
    commuting: bool
    witness: tuple | None
    extreme_orbits: tuple


@dataclass(frozen=True)
class DichotomyReport:
    verdicts: dict
    regular_orbit_equivalent: tuple | None
    route: str | None
    labels: tuple = ()
    vertex_counts: dict = field(default_factory=dict)

    @property
    def commuting(self) -> bool:
        return self.verdicts[NormKind.HOFER].commuting


def vertex_condition(E: OrbitFamily):
    """y = x_i - w*.x_i for a vertex that is regular there and dominates every x_j."""
    for x in E.vertices:
        y = tuple(a - b for a, b in zip(x, reversed(x)))
        if not is_regular(y):
            continue
        if all(s >= 0 for xj in E.vertices for s in prefix_sums([a - b for a, b in zip(x, xj)])):
            return y
    return None


def regular_orbit_equivalence(K: KirwanInput | OrbitFamily):
    """(y, route) when the Hofer norm is that of the regular orbit through y/2, else (None, None).

    The vertex route is only sufficient; the polytope route catches the rest.
    """
    E = K.family if isinstance(K, KirwanInput) else K
    direct = weyl_chamber_norm_test(E, NormKind.HOFER)
    y = vertex_condition(E)
    if y is not None:
        if direct != y:
            raise RuntimeError("vertex condition and polytope test disagree")
        return y, "vertex-condition"
    if direct is not None:
        return direct, "polytope"
    return None, None


def commuting_hamiltonians(K: KirwanInput | OrbitFamily, labels=()) -> DichotomyReport:
    E = K.family if isinstance(K, KirwanInput) else K
    if isinstance(K, KirwanInput) and not labels:
        labels = (K.label,)
    verdicts, counts = {}, {}
    for kind in DICHOTOMY_KINDS:
        r = has_abelian_faces(E, kind)
        verdicts[kind] = KindVerdict(r.value, r.witness, r.extreme_orbits)
        counts[kind] = len(hofer_polytope(E, kind).vertices)
    y, route = regular_orbit_equivalence(E)
    return DichotomyReport(verdicts, y, route, tuple(labels), counts)


def product_compose(inputs) -> tuple[KirwanInput, DichotomyReport]:
    """Kirwan data of the diagonal action on a product, with verdict propagation checks.

    Convexified moment images add, so the composite one-sided polytope is the
    Minkowski sum of the factors' and the composite Hofer polytope is the sum
    of the factors' Hofer polytopes.
    """
    inputs = list(inputs)
    if not inputs:
        raise MalformedInput("nothing to compose")
    n = inputs[0].n
    if any(k.n != n for k in inputs):
        raise DimensionMismatch("factors act through different SU(n)")
    fams = [k.family for k in inputs]

    plus = hofer_polytope(fams[0], NormKind.ONE_SIDED_PLUS)
    hof = hofer_polytope(fams[0], NormKind.HOFER)
    for E in fams[1:]:
        plus = minkowski_sum(plus, hofer_polytope(E, NormKind.ONE_SIDED_PLUS))
        hof = minkowski_sum(hof, hofer_polytope(E, NormKind.HOFER))
    label = " x ".join(k.label or f"factor{i}" for i, k in enumerate(inputs))
    composite = KirwanInput(n, dominant_extreme_points(plus), label)
    E = composite.family
    if hofer_polytope(E, NormKind.HOFER) != hof:
        raise RuntimeError("composite Hofer polytope differs from the sum of the factors'")

    report = commuting_hamiltonians(E, labels=tuple(k.label for k in inputs))
    factor_reports = [has_abelian_faces(F, NormKind.HOFER) for F in fams]
    if any(r.value for r in factor_reports) and not report.commuting:
        raise RuntimeError("a regular factor did not make the sum regular")
    singles = [r.extreme_orbits for r in factor_reports]
    if all(len(s) == 1 for s in singles):
        y = tuple(sum(c) for c in zip(*(s[0] for s in singles)))
        if report.verdicts[NormKind.HOFER].extreme_orbits != (y,):
            raise RuntimeError("single-orbit factors did not sum to a single orbit")
    return composite, report
