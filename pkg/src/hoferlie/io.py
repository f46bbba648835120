"""JSON and CSV formats.

Matrices are row-major arrays of [re, im] pairs; rationals are "p/q" strings
(integers without a denominator); floats pass through as JSON numbers.
"""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

import numpy as np

from .algebra import spectrum
from .errors import MalformedInput
from .geodesy import DerivativePath, GeodesicCertificate, GroupPath
from .kirwan import DichotomyReport, KirwanInput
from .norms import Mode, NormingCertificate, OrbitFamily
from .polytope import Polytope
from .polytope.exact import as_fraction, fmt


def rat(q) -> str:
    return fmt(Fraction(q))


def vec_to_json(v) -> list:
    return [rat(c) if isinstance(c, (Fraction, int)) else float(c) for c in v]


def vec_from_json(v) -> tuple:
    if not isinstance(v, (list, tuple)) or not v:
        raise MalformedInput("expected a nonempty array of numbers")
    return tuple(as_fraction(c) for c in v)


def parse_inline_vector(s: str) -> tuple:
    """'2,1,-3' or '1/2,-1/2' into exact rationals."""
    try:
        return vec_from_json([c for c in s.replace(" ", "").split(",") if c])
    except MalformedInput:
        raise
    except Exception as exc:  # pragma: no cover - defensive
        raise MalformedInput(f"bad vector {s!r}") from exc


def matrix_to_json(m) -> list:
    a = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def matrix_from_json(data) -> np.ndarray:
    try:
        a = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MalformedInput("matrix must be an array of [re, im] pairs") from exc
    if a.ndim != 3 or a.shape[2] != 2 or a.shape[0] != a.shape[1]:
        raise MalformedInput(f"matrix must be n x n x 2, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise MalformedInput("non-finite matrix entry")
    return a[..., 0] + 1j * a[..., 1]


# -- families and polytopes -------------------------------------------------------------


def family_to_json(E: OrbitFamily) -> dict:
    return {"n": E.n, "mode": E.mode.value, "vertices": [vec_to_json(v) for v in E.vertices]}


def family_from_json(data) -> OrbitFamily:
    if not isinstance(data, dict) or "vertices" not in data:
        raise MalformedInput("family JSON needs a 'vertices' array")
    verts = [vec_from_json(v) for v in data["vertices"]]
    if not verts:
        raise MalformedInput("family has no vertices")
    n = int(data.get("n", len(verts[0])))
    try:
        mode = Mode(data.get("mode", Mode.KIRWAN_HULL.value))
    except ValueError as exc:
        raise MalformedInput(f"unknown mode {data.get('mode')!r}") from exc
    return OrbitFamily(n, tuple(verts), mode)


def kirwan_from_json(data, label: str = "") -> KirwanInput:
    E = family_from_json(data)
    return KirwanInput(E.n, E.vertices, data.get("label", label) if isinstance(data, dict) else label)


def polytope_to_json(P: Polytope, facets: bool = True) -> dict:
    out = {"n": P.n, "vertices": [vec_to_json(v) for v in sorted(P.vertices)]}
    if facets:
        out["facets"] = [{"normal": list(f.normal), "offset": rat(f.offset)} for f in P.facets]
        if P.equalities:
            out["equalities"] = [{"normal": list(e.normal), "offset": rat(e.offset)} for e in P.equalities]
    return out


def polytope_from_json(data) -> Polytope:
    return Polytope.from_vertices([vec_from_json(v) for v in data["vertices"]], int(data["n"]))


def polytope_csv(P: Polytope, coords=(0, 1)) -> str:
    """Vertices projected to two coordinates, in counterclockwise order."""
    j, k = coords
    if not (0 <= j < P.n and 0 <= k < P.n) or j == k:
        raise MalformedInput(f"bad coordinate pair {coords}")
    pts = sorted({(v[j], v[k]) for v in P.vertices})
    cx = sum(float(p[0]) for p in pts) / len(pts)
    cy = sum(float(p[1]) for p in pts) / len(pts)
    pts.sort(key=lambda p: math.atan2(float(p[1]) - cy, float(p[0]) - cx))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"x{j}", f"x{k}"])
    for p in pts:
        w.writerow([rat(p[0]), rat(p[1])])
    return buf.getvalue()


# -- paths and certificates ---------------------------------------------------------------


def path_to_json(path: GroupPath) -> dict:
    return {"times": list(path.times), "points": [matrix_to_json(p) for p in path.points]}


def derivatives_to_json(d: DerivativePath) -> dict:
    return {"times": list(d.times), "derivatives": [matrix_to_json(x) for x in d.derivatives]}


def path_from_json(data):
    """A GroupPath ({times, points}) or a DerivativePath ({times, derivatives})."""
    if not isinstance(data, dict) or "times" not in data:
        raise MalformedInput("path JSON needs 'times'")
    if "points" in data:
        return GroupPath(tuple(data["times"]), tuple(matrix_from_json(p) for p in data["points"]))
    if "derivatives" in data:
        return DerivativePath(tuple(data["times"]), tuple(matrix_from_json(x) for x in data["derivatives"]))
    raise MalformedInput("path JSON needs 'points' or 'derivatives'")


def _vertex_list(vs):
    return None if vs is None else [vec_to_json(v) for v in vs]


def certificate_to_json(c: GeodesicCertificate) -> dict:
    out = {
        "verdict": c.verdict.value,
        "method": c.method.value,
        "functional": None if c.functional is None else vec_to_json(c.functional),
        "plus_witnesses": _vertex_list(c.plus_witnesses),
        "minus_witnesses": _vertex_list(c.minus_witnesses),
        "coordinates": [vec_to_json(v) for v in c.coordinates],
        "norms": [rat(q) if isinstance(q, Fraction) else float(q) for q in c.norms],
        "snap_error": c.snap_error,
    }
    if c.residual is not None:
        out["residual"] = c.residual
    if c.basis is not None:
        out["basis"] = matrix_to_json(c.basis)
    if c.note:
        out["note"] = c.note
    return out


def norming_certificate_to_json(c: NormingCertificate) -> dict:
    return {
        "kind": c.kind.value,
        "value": rat(c.value),
        "functional": vec_to_json(c.functional),
        "plus_face": [vec_to_json(v) for v in c.plus_face.vertices],
        "minus_face": [vec_to_json(v) for v in c.minus_face.vertices],
    }


def dichotomy_to_json(r: DichotomyReport) -> dict:
    return {
        "commuting": r.commuting,
        "kinds": {
            k.value: {
                "commuting": v.commuting,
                "witness": None if v.witness is None else vec_to_json(v.witness),
                "extreme_orbits": [vec_to_json(y) for y in v.extreme_orbits],
                "vertex_count": r.vertex_counts.get(k),
            }
            for k, v in r.verdicts.items()
        },
        "regular_orbit_equivalent": None if r.regular_orbit_equivalent is None else vec_to_json(r.regular_orbit_equivalent),
        "route": r.route,
        "labels": list(r.labels),
    }


def eigen_csv(derivs: DerivativePath, coordinates=None) -> str:
    """Rows (t, eigenvalue_1, ..., eigenvalue_n) for eigenvalue-crossing plots.

    Uses the joint-basis coordinates when given (so crossings show), else each
    speed's own decreasing spectrum.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t"] + [f"e{j}" for j in range(derivs.n)])
    for k, (t, x) in enumerate(zip(derivs.times, derivs.derivatives)):
        vals = coordinates[k] if coordinates is not None else spectrum(x).values
        w.writerow([repr(float(t))] + [repr(float(c)) for c in vals])
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
