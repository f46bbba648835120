"""Command-line interface.

Machine-readable JSON goes to stdout (or --out); human summaries go to stderr.
Exit codes: 0 ok/certified, 1 refuted or battery failure, 2 malformed input,
3 family not full, 4 dimension too large, 5 inconclusive, 6 not commuting.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import batteries, io
from .algebra import as_skew, spectrum
from .config import DEFAULT, Tolerances
from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    HoferError,
    MalformedInput,
    NotCommuting,
    NotFull,
    ZeroVector,
)
from .geodesy import (
    DerivativePath,
    certify_commuting,
    heuristic_certify,
    is_commuting_family,
    log_derivatives,
    snap_coordinates,
)
from .kirwan import commuting_hamiltonians, product_compose
from .norms import NormKind, has_abelian_faces, hofer_polytope, norm, norming_certificate

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_MALFORMED = 2
EXIT_NOT_FULL = 3
EXIT_TOO_LARGE = 4
EXIT_INCONCLUSIVE = 5
EXIT_NOT_COMMUTING = 6

KIND_CHOICES = [k.value for k in NormKind]


def _emit(args, payload: dict):
    text = io.dumps(payload) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _say(msg: str):
    print(msg, file=sys.stderr)


def _tolerances(args) -> Tolerances:
    return DEFAULT.with_(
        eps_mat=args.tol_mat, eps_branch=args.tol_branch, eps_cluster=args.tol_cluster, snap_den=args.snap_den
    )


def _scale(args):
    try:
        return Fraction(args.scale)
    except ValueError:
        return float(args.scale)


def _num(v) -> float:
    return float(f"{float(v):.12g}")


# -- commands ---------------------------------------------------------------------------


def cmd_norm(args) -> int:
    E = io.family_from_json(io.load_json(args.family))
    kind = NormKind.parse(args.kind)
    scale = _scale(args)
    tol = _tolerances(args)
    if args.spectrum is not None:
        xi = io.parse_inline_vector(args.spectrum)
        if sum(xi) != 0:
            raise MalformedInput("spectrum must sum to zero")
        exact_input = True
    else:
        data = io.load_json(args.x)
        if isinstance(data, dict) and "spectrum" in data:
            xi = io.vec_from_json(data["spectrum"])
            exact_input = True
        else:
            x = as_skew(io.matrix_from_json(data["matrix"] if isinstance(data, dict) else data), tol.eps_mat)
            xi, _ = snap_coordinates(spectrum(x).values, tol)
            exact_input = False
    value = norm(E, xi, kind, scale)
    xi = tuple(sorted(xi, reverse=True))
    out = {"kind": kind.value, "value": _num(value), "spectrum": io.vec_to_json(xi), "exact_input": exact_input}
    if isinstance(value, Fraction):
        out["exact"] = io.rat(value)
    try:
        cert = norming_certificate(E, xi, kind)
        out["certificate"] = io.norming_certificate_to_json(cert)
    except ZeroVector:
        out["certificate"] = None
    _emit(args, out)
    _say(f"{kind.value} norm = {float(value):.12g}")
    return EXIT_OK


def cmd_polytope(args) -> int:
    E = io.family_from_json(io.load_json(args.family))
    kind = NormKind.parse(args.kind)
    P = hofer_polytope(E, kind)
    if args.export == "csv":
        coords = tuple(int(c) for c in args.coords.split(","))
        text = io.polytope_csv(P, coords)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        payload = io.polytope_to_json(P, facets=not args.no_facets)
        payload["kind"] = kind.value
        _emit(args, payload)
    _say(f"{kind.value} polytope: {len(P.vertices)} vertices")
    return EXIT_OK


def cmd_certify(args) -> int:
    tol = _tolerances(args)
    E = io.family_from_json(io.load_json(args.family))
    kind = NormKind.parse(args.kind)
    path = io.path_from_json(io.load_json(args.path))
    derivs = path if isinstance(path, DerivativePath) else log_derivatives(path, args.convention, tol)
    if derivs.n != E.n:
        raise DimensionMismatch(f"path lives in SU({derivs.n}) but the family in SU({E.n})")
    if is_commuting_family(derivs, tol):
        cert = certify_commuting(derivs, E, kind, tol)
        verdict = cert.verdict.value
        code = EXIT_OK if cert.certified else EXIT_REFUTED
    else:
        cert = heuristic_certify(derivs, E, kind, restarts=args.restarts, seed=args.seed)
        if cert.certified:
            verdict, code = "certified", EXIT_OK
        elif has_abelian_faces(E, kind):
            verdict, code = "not-commuting", EXIT_NOT_COMMUTING
        else:
            verdict, code = "inconclusive", EXIT_INCONCLUSIVE
    payload = io.certificate_to_json(cert)
    payload["verdict"] = verdict
    payload["kind"] = kind.value
    payload["family"] = io.family_to_json(E)
    _emit(args, payload)
    if args.eigen_csv:
        coords = [[float(c) for c in v] for v in cert.coordinates] if cert.coordinates else None
        with open(args.eigen_csv, "w") as fh:
            fh.write(io.eigen_csv(derivs, coords))
    _say(f"verdict: {verdict} ({cert.method.value})")
    return code


def cmd_kirwan(args) -> int:
    K = io.kirwan_from_json(io.load_json(args.family), label=args.family)
    if args.product:
        others = [io.kirwan_from_json(io.load_json(f), label=f) for f in args.product]
        composite, report = product_compose([K] + others)
        payload = io.dichotomy_to_json(report)
        payload["composite"] = {"n": composite.n, "vertices": [io.vec_to_json(v) for v in composite.vertices]}
    else:
        report = commuting_hamiltonians(K)
        payload = io.dichotomy_to_json(report)
    _emit(args, payload)
    _say(f"commuting: {str(report.commuting).lower()}")
    return EXIT_OK


def cmd_battery(args) -> int:
    rep = batteries.run(args.theorem, args.samples, args.seed, _tolerances(args))
    _emit(args, rep.to_json())
    _say(f"{rep.theorem}: {rep.passed} passed, {len(rep.failures)} failed, {rep.skipped} resampled")
    for f in rep.failures:
        _say(io.dumps(f))
    return EXIT_OK if rep.ok else EXIT_REFUTED


# -- parser ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hoferlie", description="Generalized Hofer norms on su(n) and geodesics in SU(n).")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", default="1", help="inner product scale (rational or float)")
    p.add_argument("--tol-mat", type=float, default=DEFAULT.eps_mat)
    p.add_argument("--tol-branch", type=float, default=DEFAULT.eps_branch)
    p.add_argument("--tol-cluster", type=float, default=DEFAULT.eps_cluster)
    p.add_argument("--snap-den", type=int, default=DEFAULT.snap_den)
    p.add_argument("--out", help="write JSON here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("norm", help="evaluate a norm")
    s.add_argument("family")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--x", help="JSON file with a matrix or {spectrum: [...]}")
    g.add_argument("--spectrum", help="inline spectrum, e.g. 2,1,-3")
    s.add_argument("--kind", choices=KIND_CHOICES, default="hofer")
    s.set_defaults(func=cmd_norm)

    s = sub.add_parser("polytope", help="build the norm polytope")
    s.add_argument("family")
    s.add_argument("--kind", choices=KIND_CHOICES, default="hofer")
    s.add_argument("--export", choices=["json", "csv"], default="json")
    s.add_argument("--coords", default="0,1", help="coordinate pair for the CSV slice")
    s.add_argument("--no-facets", action="store_true")
    s.set_defaults(func=cmd_polytope)

    s = sub.add_parser("certify", help="certify a sampled path as a geodesic")
    s.add_argument("path", help="JSON {times, points} or {times, derivatives}")
    s.add_argument("family")
    s.add_argument("--kind", choices=KIND_CHOICES, default="hofer")
    s.add_argument("--convention", choices=["left", "right"], default="left")
    s.add_argument("--restarts", type=int, default=100)
    s.add_argument("--eigen-csv", help="write (t, eigenvalues) rows here")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("kirwan", help="commuting-Hamiltonian dichotomy from Kirwan data")
    s.add_argument("family")
    s.add_argument("--product", nargs="+", metavar="FILE")
    s.set_defaults(func=cmd_kirwan)

    s = sub.add_parser("battery", help="run a seeded property battery")
    s.add_argument("--theorem", choices=list(batteries.THEOREMS), required=True)
    s.add_argument("--samples", type=int, default=500)
    s.set_defaults(func=cmd_battery)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotFull as exc:
        _say(f"error: {exc}")
        return EXIT_NOT_FULL
    except DimensionTooLarge as exc:
        _say(f"error: {exc}")
        return EXIT_TOO_LARGE
    except NotCommuting as exc:
        _say(f"error: {exc}")
        return EXIT_NOT_COMMUTING
    except (HoferError, ValueError, KeyError, TypeError) as exc:
        _say(f"error: {exc}")
        return EXIT_MALFORMED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
