"""Seeded sampling batteries for the exponential-map and majorization properties."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import adjoint, diag_skew, random_skew, random_unitary
from .config import DEFAULT, Tolerances
from .errors import BoundaryOfInjectivity
from .geodesy import check_exp_metric_decreasing, check_exponential_theorem, check_product_exponentials
from .io import matrix_to_json
from .norms import ALL_KINDS, Mode, OrbitFamily, majorizes_ad, majorizes_by_hull, majorizes_by_partial_sums

THEOREMS = ("expono", "product-exp", "metric-decreasing", "majorization")


@dataclass
class BatteryReport:
    theorem: str
    samples: int
    seed: int
    passed: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "samples": self.samples,
            "seed": self.seed,
            "passed": self.passed,
            "skipped": self.skipped,
            "ok": self.ok,
            "failures": self.failures,
            "notes": self.notes,
        }


def random_dominant(n: int, rng: np.random.Generator, lo: int = -4, hi: int = 4) -> tuple:
    """Random nonzero dominant rational vector with zero sum."""
    while True:
        r = [int(c) for c in rng.integers(lo, hi + 1, n)]
        m = Fraction(sum(r), n)
        v = tuple(sorted((c - m for c in r), reverse=True))
        if any(v):
            return v


def random_regular_dominant(n: int, rng: np.random.Generator, spread: int = 6) -> tuple:
    r = sorted(rng.choice(np.arange(-spread, spread + 1), size=n, replace=False).tolist(), reverse=True)
    m = Fraction(sum(r), n)
    return tuple(c - m for c in r)


def random_family(n: int, rng: np.random.Generator, max_vertices: int = 3, mode: Mode | None = None) -> OrbitFamily:
    k = int(rng.integers(1, max_vertices + 1))
    if mode is None:
        mode = Mode.KIRWAN_HULL if rng.random() < 0.5 else Mode.DISCRETE_UNION
    return OrbitFamily(n, tuple(random_dominant(n, rng) for _ in range(k)), mode)


def norm_battery(n: int, rng: np.random.Generator, size: int = 10) -> list:
    """``size`` (family, kind) pairs cycling through every norm kind."""
    return [(random_family(n, rng), ALL_KINDS[i % len(ALL_KINDS)]) for i in range(size)]


def random_rational_spectrum(n: int, rng: np.random.Generator, den: int = 7) -> tuple:
    r = [Fraction(int(c), den) for c in rng.integers(-20, 21, n)]
    m = sum(r, Fraction(0)) / n
    return tuple(c - m for c in r)


def _batteries_by_n(rng, n_values, size=10):
    return {n: norm_battery(n, rng, size) for n in n_values}


def _wide_skew(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random w with spectral radius uniform in (pi, 2 pi)."""
    v = rng.standard_normal(n)
    v -= v.mean()
    v *= rng.uniform(np.pi, 2 * np.pi) / np.max(np.abs(v))
    return random_skew(n, rng, v)


def _small_skew(n: int, rng: np.random.Generator, radius: float) -> np.ndarray:
    v = rng.standard_normal(n)
    v -= v.mean()
    v *= rng.uniform(0.05, radius) / np.max(np.abs(v))
    return random_skew(n, rng, v)


def run_expono(samples: int = 500, seed: int = 0, n_max: int = 4, tol: Tolerances = DEFAULT, interior: int = 0) -> BatteryReport:
    """log exp w versus w for wide w; ``interior`` extra samples inside the injectivity domain."""
    rng = np.random.default_rng(seed)
    ns = list(range(2, n_max + 1))
    batteries = _batteries_by_n(rng, ns)
    rep = BatteryReport("expono", samples + interior, seed)
    done = 0
    while done < samples + interior:
        n = int(rng.choice(ns))
        if done < samples:
            w = _wide_skew(n, rng)
        else:
            w = _small_skew(n, rng, np.pi - 0.06)
        try:
            r = check_exponential_theorem(w, batteries[n], tol)
        except BoundaryOfInjectivity:
            rep.skipped += 1
            continue
        done += 1
        if r.ok:
            rep.passed += 1
        else:
            rep.failures.append({"w": matrix_to_json(w), "failures": r.failures})
    return rep


def run_product_exp(samples: int = 1000, seed: int = 0, n_max: int = 4, tol: Tolerances = DEFAULT, commuting_every: int = 5) -> BatteryReport:
    """Product of exponentials; every ``commuting_every``-th pair is built commuting."""
    rng = np.random.default_rng(seed)
    ns = list(range(2, n_max + 1))
    batteries = _batteries_by_n(rng, ns)
    rep = BatteryReport("product-exp", samples, seed)
    done = 0
    while done < samples:
        n = int(rng.choice(ns))
        if commuting_every and done % commuting_every == 0:
            u = random_unitary(n, rng)
            a, b = rng.standard_normal(n), rng.standard_normal(n)
            a = (a - a.mean()) * 0.7 / np.max(np.abs(a - a.mean()))
            b = (b - b.mean()) * 0.7 / np.max(np.abs(b - b.mean()))
            x, y = adjoint(u, diag_skew(a)), adjoint(u, diag_skew(b))
        else:
            x, y = _small_skew(n, rng, 1.5), _small_skew(n, rng, 1.5)
        try:
            r = check_product_exponentials(x, y, batteries[n], tol)
        except BoundaryOfInjectivity:
            rep.skipped += 1
            continue
        done += 1
        if r.ok:
            rep.passed += 1
        else:
            rep.failures.append({"x": matrix_to_json(x), "y": matrix_to_json(y), "failures": r.failures})
    return rep


def run_metric_decreasing(samples: int = 1000, seed: int = 0, n_max: int = 4, tol: Tolerances = DEFAULT) -> BatteryReport:
    rng = np.random.default_rng(seed)
    ns = list(range(2, n_max + 1))
    rep = BatteryReport("metric-decreasing", samples, seed)
    done = 0
    while done < samples:
        n = int(rng.choice(ns))
        E = random_family(n, rng)
        kind = ALL_KINDS[done % len(ALL_KINDS)]
        v = _small_skew(n, rng, 2.5)
        if done % 3 == 0:
            # commuting pair with a small difference
            s = v / 1j
            w = v + 0.2 * rng.standard_normal() * (s @ s - np.trace(s @ s) / n * np.eye(n)) * 1j
        else:
            w = _small_skew(n, rng, 2.5)
        try:
            r = check_exp_metric_decreasing(v, w, E, kind, tol)
        except BoundaryOfInjectivity:
            rep.skipped += 1
            continue
        done += 1
        if r.ok:
            rep.passed += 1
        else:
            rep.failures.append({"v": matrix_to_json(v), "w": matrix_to_json(w), "family": [list(map(str, x)) for x in E.vertices], "kind": kind.value, "failures": r.failures})
    return rep


def run_majorization(samples: int = 500, seed: int = 0, n_max: int = 5, ad_checks: int = 100) -> BatteryReport:
    """Partial sums versus the permutohedron LP on rational spectra, plus the ad-string order.

    Majorization of spectra implies majorization of the ad-strings (all
    pairwise differences) but not conversely, so only that implication is
    asserted; pairs where the ad-strings are ordered and the spectra are not
    are counted in ``notes["ad_only"]``.
    """
    rng = np.random.default_rng(seed)
    rep = BatteryReport("majorization", samples + ad_checks, seed)
    for i in range(samples):
        n = int(rng.integers(2, n_max + 1))
        w = random_rational_spectrum(n, rng)
        if i % 2:
            # doubly stochastic image of w: a convex combination of permutations
            k = int(rng.integers(1, 4))
            lam = [Fraction(int(c), 1) for c in rng.integers(1, 6, k)]
            tot = sum(lam)
            z = [Fraction(0)] * n
            for c in lam:
                p = rng.permutation(n)
                for j in range(n):
                    z[j] += c / tot * w[p[j]]
            z = tuple(z)
        else:
            z = random_rational_spectrum(n, rng)
        a, b = majorizes_by_partial_sums(w, z), majorizes_by_hull(w, z)
        if a == b:
            rep.passed += 1
        else:
            rep.failures.append({"w": [str(c) for c in w], "z": [str(c) for c in z], "partial_sums": a, "hull": b})
    rep.notes["ad_only"] = 0
    for _ in range(ad_checks):
        n = int(rng.integers(2, n_max + 1))
        w = random_skew(n, rng)
        z = random_skew(n, rng) * rng.uniform(0.2, 1.0)
        a, b = majorizes_by_partial_sums(w, z), majorizes_ad(w, z)
        if b and not a:
            rep.notes["ad_only"] += 1
        if b or not a:
            rep.passed += 1
        else:
            rep.failures.append({"w": matrix_to_json(w), "z": matrix_to_json(z), "partial_sums": a, "ad": b})
    return rep


def run(theorem: str, samples: int, seed: int, tol: Tolerances = DEFAULT) -> BatteryReport:
    if theorem == "expono":
        return run_expono(samples, seed, tol=tol)
    if theorem == "product-exp":
        return run_product_exp(samples, seed, tol=tol)
    if theorem == "metric-decreasing":
        return run_metric_decreasing(samples, seed, tol=tol)
    if theorem == "majorization":
        return run_majorization(samples, seed)
    raise ValueError(f"unknown theorem {theorem!r}")
