from fractions import Fraction as F

import numpy as np
import pytest

from samplers import (
    commuting_speeds,
    competitor_polygon,
    crossing_family_speeds,
    derivative_path,
    regular_orbit_family,
    skew_of_radius,
)
from hoferlie.algebra import diag_skew, group_exp, random_skew, random_unitary
from hoferlie.batteries import norm_battery, random_family
from hoferlie.config import DEFAULT
from hoferlie.errors import MalformedInput, NotCommuting, StepTooLarge
from hoferlie.geodesy import (
    DerivativePath,
    GroupPath,
    Method,
    Verdict,
    certify_commuting,
    certify_regular_orbit,
    check_exp_metric_decreasing,
    check_exponential_theorem,
    check_product_exponentials,
    common_ordering,
    competitor_length,
    distance_segment,
    heuristic_certify,
    is_commuting_family,
    log_derivatives,
    path_length,
    quasi_autonomy_report,
    snap_coordinates,
)
from hoferlie.norms import ALL_KINDS, NormKind, OrbitFamily, norm

H = NormKind.HOFER
REG3 = OrbitFamily.orbit((1, 0, -1))


def V(*cs):
    return tuple(F(c) for c in cs)


def test_path_validation():
    with pytest.raises(MalformedInput):
        GroupPath((0.0,), (np.eye(2),))
    with pytest.raises(MalformedInput):
        GroupPath((0.0, 0.0), (np.eye(2), np.eye(2)))
    with pytest.raises(MalformedInput):
        DerivativePath((0.0, 1.0), ())
    with pytest.raises(MalformedInput):
        GroupPath((0.0, 1.0), (np.eye(2), 2 * np.eye(2)))


def test_log_derivatives_recover_polygon_speeds():
    rng = np.random.default_rng(0)
    speeds = [skew_of_radius(3, rng, 1.0) for _ in range(4)]
    times = (0.0, 0.5, 1.0, 1.2, 2.0)
    path = GroupPath.polygon(speeds, times)
    d = log_derivatives(path)
    for a, b in zip(d.derivatives, speeds):
        np.testing.assert_allclose(a, b, atol=1e-10)
    right = log_derivatives(path, "right")
    for g, a, b in zip(path.points, right.derivatives, speeds):
        np.testing.assert_allclose(a, g @ b @ g.conj().T, atol=1e-10)
    E = random_family(3, rng)
    assert path_length(d, E) == pytest.approx(path_length(right, E))
    with pytest.raises(ValueError):
        log_derivatives(path, "middle")


def test_log_derivatives_step_too_large():
    # principal arguments of exp(z) sum to 2 pi, so no traceless log lies in the spectral ball
    z = diag_skew([2.5, 2.5, -5.0])
    path = GroupPath.one_parameter(z, (0.0, 1.0))
    with pytest.raises(StepTooLarge):
        log_derivatives(path)


def test_path_length_of_one_parameter_path():
    z = diag_skew([2.0, 1.0, -3.0])
    d = DerivativePath.constant(0.1 * z, (0.0, 1.0, 3.0))
    assert path_length(d, REG3) == pytest.approx(0.1 * 10 * 3)


def test_distance_segment():
    rng = np.random.default_rng(1)
    u = random_unitary(3, rng)
    z = skew_of_radius(3, rng, 2.0)
    d, zz = distance_segment(u, u @ group_exp(z), REG3)
    np.testing.assert_allclose(zz, z, atol=1e-10)
    assert d == pytest.approx(norm(REG3, z))


def test_snap_coordinates_preserves_ties_and_sum():
    vals = [1.0 + 1e-13, 1.0, -0.5, -1.5 - 1e-13]
    s, err = snap_coordinates(vals)
    assert s[0] == s[1] and sum(s) == 0
    assert err < 1e-9
    tol = DEFAULT.with_(snap_den=10)
    s, err = snap_coordinates([0.33, -0.33], tol)
    assert s == (F(3, 10), F(-3, 10))


def test_common_ordering():
    assert common_ordering([V(1, 0, -1), V(2, 2, -4)]) == [0, 1, 2]
    assert common_ordering([V(0, 1, -1), V(-1, 2, -1)]) == [1, 0, 2]
    assert common_ordering([V(1, 0, -1), V(0, 1, -1)]) is None


def test_one_parameter_path_certified_all_kinds():
    rng = np.random.default_rng(2)
    for _ in range(10):
        n = int(rng.integers(2, 5))
        E = random_family(n, rng)
        z = skew_of_radius(n, rng, 1.0)
        path = GroupPath.one_parameter(z, np.linspace(0, 1, 5), random_unitary(n, rng))
        d = log_derivatives(path)
        for k in ALL_KINDS:
            cert = certify_commuting(d, E, k)
            assert cert.certified and cert.method is Method.COMMUTING_LP
            assert cert.replay(E, k)


def test_certify_commuting_examples():
    cross = derivative_path([diag_skew([2, 1, -3]), diag_skew([1, 2, -3])])
    for k in ALL_KINDS:
        cert = certify_commuting(cross, REG3, k)
        assert cert.verdict is Verdict.REFUTED and cert.functional is None
    same = derivative_path([diag_skew([2, 1, -3]), diag_skew([3, 0, -3])])
    cert = certify_commuting(same, REG3, H)
    assert cert.certified and cert.norms == (10, 12)
    assert cert.replay(REG3, H)


def test_certify_commuting_needs_commuting_speeds():
    rng = np.random.default_rng(3)
    d = derivative_path([random_skew(3, rng), random_skew(3, rng)])
    assert not is_commuting_family(d)
    with pytest.raises(NotCommuting):
        certify_commuting(d, REG3)


def test_certified_functional_norms_every_speed():
    rng = np.random.default_rng(4)
    for _ in range(20):
        n = int(rng.integers(2, 5))
        E = random_family(n, rng)
        d = derivative_path(commuting_speeds(n, 3, rng), rng)
        for k in ALL_KINDS:
            cert = certify_commuting(d, E, k)
            if cert.certified:
                for v, t in zip(cert.coordinates, cert.norms):
                    assert sum(a * b for a, b in zip(cert.functional, v)) == t


def test_regular_orbit_chamber_agrees_with_lp():
    rng = np.random.default_rng(5)
    for _ in range(40):
        n = int(rng.integers(2, 5))
        E = regular_orbit_family(n, rng)
        d = derivative_path(commuting_speeds(n, 3, rng), rng)
        cert = certify_regular_orbit(d, E)
        assert cert.certified
        assert certify_commuting(d, E, H).certified
        assert cert.replay(E, H)


def test_regular_orbit_crossing_refuted():
    rng = np.random.default_rng(6)
    for n in (2, 3, 4):
        E = regular_orbit_family(n, rng)
        d = derivative_path(crossing_family_speeds(n, rng))
        assert certify_regular_orbit(d, E).verdict is Verdict.REFUTED
    with pytest.raises(MalformedInput):
        certify_regular_orbit(d, OrbitFamily.orbit((3, -1, -1, -1)))


def test_regular_orbit_non_commuting_refuted():
    rng = np.random.default_rng(7)
    d = derivative_path([random_skew(3, rng), random_skew(3, rng)])
    assert certify_regular_orbit(d, REG3).verdict is Verdict.REFUTED


def test_heuristic_certifies_commuting_non_crossing():
    rng = np.random.default_rng(8)
    E = regular_orbit_family(3, rng)
    d = derivative_path(commuting_speeds(3, 3, rng))
    cert = heuristic_certify(d, E, H, restarts=10)
    assert cert.certified and cert.residual < 1e-7


def test_heuristic_inconclusive_on_generic_non_commuting():
    rng = np.random.default_rng(9)
    d = derivative_path([random_skew(3, rng), random_skew(3, rng)])
    cert = heuristic_certify(d, REG3, H, restarts=10)
    assert cert.verdict is Verdict.INCONCLUSIVE and cert.residual > 1e-3


def test_heuristic_is_deterministic():
    rng = np.random.default_rng(10)
    d = derivative_path([random_skew(3, rng), random_skew(3, rng)])
    a = heuristic_certify(d, REG3, H, restarts=5, seed=3)
    b = heuristic_certify(d, REG3, H, restarts=5, seed=3)
    assert a.residual == b.residual


def test_quasi_autonomy():
    same = derivative_path([diag_skew([2, 1, -3]), diag_skew([3, 0, -3])])
    rep = quasi_autonomy_report(same, REG3)
    assert rep.quasi_autonomous and rep.certified
    assert V(1, 0, -1) in rep.plus_witnesses and V(-1, 0, 1) in rep.minus_witnesses
    cross = derivative_path([diag_skew([2, 1, -3]), diag_skew([1, 2, -3])])
    assert not quasi_autonomy_report(cross, REG3).quasi_autonomous


def test_segment_beats_competitors():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(2, 5))
        E = random_family(n, rng)
        u = random_unitary(n, rng)
        z = skew_of_radius(n, rng, rng.uniform(0.2, 2.5))
        best = norm(E, z)
        for _ in range(5):
            pts = competitor_polygon(u, z, rng, int(rng.integers(2, 6)))
            assert competitor_length(pts, E) >= best - 1e-9


def test_theorem_checks_single_cases():
    rng = np.random.default_rng(12)
    battery = norm_battery(3, rng)
    w = skew_of_radius(3, rng, 4.0)
    rep = check_exponential_theorem(w, battery)
    assert rep.ok, rep.failures
    small = skew_of_radius(3, rng, 1.0)
    assert check_exponential_theorem(small, battery).ok
    x, y = skew_of_radius(3, rng, 0.8), skew_of_radius(3, rng, 0.8)
    assert check_product_exponentials(x, y, battery).ok
    assert check_exp_metric_decreasing(x, y, REG3).ok
    a = diag_skew([0.3, 0.1, -0.4])
    rep = check_exp_metric_decreasing(a, 2 * a, REG3)
    assert rep.ok and rep.data["distance"] == pytest.approx(rep.data["bound"])
