from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from oracles import brute_extreme_points, lp_gauge, random_direction, random_sum_zero
from hoferlie.errors import (
    DegenerateInput,
    DimensionMismatch,
    DimensionTooLarge,
    MalformedInput,
    NotAVertex,
    OriginNotInterior,
    Unbounded,
    ZeroDirection,
)
from hoferlie.polytope import (
    Polytope,
    contains,
    contains_h,
    face,
    gauge,
    h_representation,
    hull,
    minkowski_sum,
    normal_cone,
    permutations_of,
    polar,
    projection,
    section,
    support,
    weyl_hull,
)
from hoferlie.polytope.dd import extreme_rays
from hoferlie.polytope.exact import as_fraction, nullspace, primitive, rank, rref, snap_to_grid
from hoferlie.polytope.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, linprog_exact


def V(*cs):
    return tuple(F(c) for c in cs)


HEX = hull(permutations_of(V(1, 0, -1)))


def random_weyl_polytope(n, rng, k=2):
    return weyl_hull([random_sum_zero(n, rng) for _ in range(k)] + [V(*([1] + [0] * (n - 2) + [-1]))])


def random_symmetric_hull(n, rng, k=4):
    pts = []
    for _ in range(k):
        p = random_sum_zero(n, rng)
        pts += [p, tuple(-c for c in p)]
    pts += [tuple(F(int(j == i)) - F(1, n) for j in range(n)) for i in range(n)]
    return hull(pts)


# -- exact helpers -------------------------------------------------------------------------


def test_as_fraction():
    assert as_fraction("3/4") == F(3, 4)
    assert as_fraction(0.5) == F(1, 2)
    assert as_fraction(np.int64(3)) == 3
    for bad in ["x", float("nan"), True, None]:
        with pytest.raises(MalformedInput):
            as_fraction(bad)


def test_snap_to_grid_keeps_sum_zero():
    rng = np.random.default_rng(0)
    for _ in range(100):
        v = rng.standard_normal(5)
        v -= v.mean()
        s, err = snap_to_grid(v, 1000)
        assert sum(s) == 0
        assert err <= 5e-3
        assert all((c * 1000).denominator == 1 for c in s)


def test_linear_algebra_helpers():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(rows) == 2
    R, piv = rref(rows, 3)
    assert piv == [0, 1]
    for v in nullspace(rows, 3):
        assert all(sum(F(a) * b for a, b in zip(r, v)) == 0 for r in rows)
    assert primitive([F(2, 3), F(-4, 3)]) == (1, -2)


# -- exact LP ---------------------------------------------------------------------------------


def test_lp_against_scipy():
    rng = np.random.default_rng(1)
    for _ in range(40):
        m, k = 4, 3
        A = rng.integers(-3, 4, (m, k))
        b = rng.integers(1, 6, m)
        c = rng.integers(-3, 4, k)
        res = linprog_exact(c.tolist(), A.tolist(), b.tolist())
        ref = linprog(-c, A_ub=A, b_ub=b, bounds=[(0, None)] * k, method="highs")
        if ref.status == 3:
            assert res.status == UNBOUNDED
        else:
            assert res.status == OPTIMAL
            assert float(res.value) == pytest.approx(-ref.fun, abs=1e-9)
            assert all(x >= 0 for x in res.x)


def test_lp_infeasible_and_equalities():
    assert linprog_exact([1], A_eq=[[1]], b_eq=[-1]).status == INFEASIBLE
    res = linprog_exact([1, 1], A_eq=[[1, 1], [2, 2]], b_eq=[3, 6])
    assert res.status == OPTIMAL and res.value == 3


# -- double description -------------------------------------------------------------------------


def test_extreme_rays_orthant_and_unbounded():
    rays = extreme_rays([[-1, 0, 0], [0, -1, 0], [0, 0, -1]])
    assert sorted(r for r, _ in rays) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    with pytest.raises(Unbounded):
        extreme_rays([[-1, 0, 0], [0, -1, 0]])


def test_extreme_rays_square_cone():
    # cone over the square |x|, |y| <= t
    rows = [[1, 0, -1], [-1, 0, -1], [0, 1, -1], [0, -1, -1]]
    rays = sorted(r for r, _ in extreme_rays(rows))
    assert rays == sorted([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)])


# -- hull and H-representation ----------------------------------------------------------------------


def test_hull_examples():
    assert len(HEX.vertices) == 6
    assert hull([V(1, -1)]).vertices == (V(1, -1),)
    seg = hull([V(1, 0, -1), V(-1, 0, 1), V(0, 0, 0), V(F(1, 2), 0, F(-1, 2))])
    assert seg.vertices == (V(-1, 0, 1), V(1, 0, -1))
    with pytest.raises(DegenerateInput):
        hull([])
    with pytest.raises(MalformedInput):
        hull([V(1, 1)])
    with pytest.raises(DimensionTooLarge):
        hull([tuple(F(0) for _ in range(7))])


def test_hull_matches_brute_force_lp():
    rng = np.random.default_rng(2)
    for _ in range(30):
        n = int(rng.integers(3, 5))
        pts = [random_sum_zero(n, rng) for _ in range(int(rng.integers(3, 9)))]
        P = hull(pts)
        assert list(P.vertices) == brute_extreme_points(pts)
        for p in pts:
            assert contains(P, p)


def test_h_representation_examples():
    H = h_representation(HEX)
    assert len(H.facets) == 6 and not H.lower_dimensional
    assert {f.offset for f in H.facets} == {3}
    assert (2, -1, -1) in {f.normal for f in H.facets}
    seg = hull([V(1, 0, -1), V(-1, 0, 1)])
    Hs = seg.h_representation()
    assert len(Hs.facets) == 2 and len(Hs.equalities) == 1 and Hs.lower_dimensional
    simplex = hull([V(2, -1, -1), V(-1, 2, -1), V(-1, -1, 2)])
    assert len(simplex.facets) == len(simplex.vertices) == 3


def test_h_v_round_trip():
    rng = np.random.default_rng(3)
    for _ in range(20):
        P = random_symmetric_hull(int(rng.integers(3, 6)), rng)
        Q = Polytope.from_inequalities(P.n, P.facets, P.equalities)
        assert Q.vertices == P.vertices
        assert hull(Q.vertices).facets == P.facets


def test_vertex_facet_incidence():
    rng = np.random.default_rng(4)
    for _ in range(10):
        P = random_weyl_polytope(4, rng)
        for v in P.vertices:
            tight = [f for f in P.facets if sum(a * b for a, b in zip(f.normal, v)) == f.offset]
            assert len(tight) >= P.dim
            assert all(sum(a * b for a, b in zip(f.normal, v)) <= f.offset for f in P.facets)
        for f in P.facets:
            assert sum(f.normal) == 0


def test_permutohedron_counts():
    P = weyl_hull([V(2, 1, 0, -1, -2)])
    assert len(P.vertices) == 120 and len(P.facets) == 30


# -- polarity, support, gauge ------------------------------------------------------------------------


def test_polar_hexagon():
    Q = polar(HEX)
    expected = permutations_of(V(F(2, 3), F(-1, 3), F(-1, 3))) | permutations_of(V(F(1, 3), F(1, 3), F(-2, 3)))
    assert set(Q.vertices) == expected
    assert polar(Q) == HEX


def test_polar_scaling_and_bipolar():
    rng = np.random.default_rng(5)
    for _ in range(20):
        P = random_weyl_polytope(int(rng.integers(3, 5)), rng)
        stripped = Polytope(P.n, polar(P).vertices)
        assert set(polar(stripped).vertices) == set(P.vertices)
        assert polar(P.scaled(2)) == polar(P).scaled(F(1, 2))


def test_polar_requires_interior_origin():
    with pytest.raises(OriginNotInterior):
        polar(hull([V(1, 0, -1), V(2, 0, -2), V(1, 1, -2)]))


def test_support_examples():
    assert support(HEX, V(0, 0, 0)) == 0
    assert support(HEX, V(1, 0, -1)) == 2
    assert support(HEX, [1.0, 0.0, -1.0]) == pytest.approx(2.0)
    P = hull([V(1, -1, 0), V(0, 1, -1)])
    x, y = V(3, 1, -4), V(-1, 2, -1)
    assert support(minkowski_sum(HEX, P), x) == support(HEX, x) + support(P, x)
    assert support(HEX, tuple(a + b for a, b in zip(x, y))) <= support(HEX, x) + support(HEX, y)


def test_gauge_examples_and_lp_oracle():
    for v in HEX.vertices:
        assert gauge(HEX, v) == 1
    assert gauge(HEX, V(0, 0, 0)) == 0
    rng = np.random.default_rng(6)
    for _ in range(100):
        P = random_symmetric_hull(int(rng.integers(3, 5)), rng)
        x = random_direction(P.n, rng)
        x = tuple(c - sum(x) / len(x) for c in x)
        g = gauge(P, x)
        assert g == lp_gauge(P.vertices, x)
        assert gauge(P, tuple(3 * c for c in x)) == 3 * g


def test_gauge_off_span_is_infinite():
    seg = hull([V(1, 0, -1), V(-1, 0, 1)])
    assert gauge(seg, V(1, -1, 0)) == float("inf")
    assert gauge(seg, V(2, 0, -2)) == 2


# -- faces and cones ----------------------------------------------------------------------------------


def test_face_examples():
    assert len(face(HEX, V(3, 1, -4)).vertices) == 1
    # (1, 1, -2) is orthogonal to the edge between (1, 0, -1) and (0, 1, -1)
    assert set(face(HEX, V(1, 1, -2)).vertices) == {V(1, 0, -1), V(0, 1, -1)}
    with pytest.raises(ZeroDirection):
        face(HEX, V(0, 0, 0))
    with pytest.raises(ZeroDirection):
        face(HEX, V(1, 1, 1))


def test_face_lies_on_boundary():
    rng = np.random.default_rng(7)
    P = random_symmetric_hull(4, rng)
    for _ in range(20):
        x = random_direction(4, rng)
        for v in face(P, x).vertices:
            assert gauge(P, v) == 1


def test_normal_cone_examples():
    sq = hull([V(1, 1, -1, -1), V(1, -1, 1, -1), V(-1, 1, -1, 1), V(-1, -1, 1, 1)])
    assert sq.dim == 2
    c = normal_cone(HEX, V(1, 0, -1))
    assert len(c.generators) == 2
    tri = hull([V(2, -1, -1), V(-1, 2, -1), V(-1, -1, 2)])
    assert len(normal_cone(tri, V(2, -1, -1)).generators) == 2
    with pytest.raises(NotAVertex):
        normal_cone(HEX, V(0, 0, 0))
    sq_cone = normal_cone(sq, V(1, 1, -1, -1))
    assert len([g for g in sq_cone.generators]) >= 2


def test_normal_cones_cover_and_match_faces():
    rng = np.random.default_rng(8)
    cones = {v: normal_cone(HEX, v) for v in HEX.vertices}
    for _ in range(1000):
        x = random_direction(3, rng)
        hits = [v for v, c in cones.items() if c.contains_direction(x)]
        assert hits
        assert set(hits) == set(face(HEX, x).vertices)


def test_minkowski_examples():
    zero = Polytope(3, (V(0, 0, 0),))
    assert minkowski_sum(HEX, zero) == HEX
    s1, s2 = hull([V(1, -1, 0), V(-1, 1, 0)]), hull([V(0, 1, -1), V(0, -1, 1)])
    assert len(minkowski_sum(s1, s2).vertices) == 4
    assert minkowski_sum(HEX, HEX) == HEX.scaled(2)
    with pytest.raises(DimensionMismatch):
        minkowski_sum(HEX, Polytope(2, (V(0, 0),)))


def test_contains_examples():
    for v in HEX.vertices:
        assert contains(HEX, v) and contains_h(HEX, v)
    assert contains(HEX, V(0, 0, 0))
    out = tuple(c * F(101, 100) for c in HEX.vertices[0])
    assert not contains(HEX, out) and not contains_h(HEX, out)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=8))
def test_contains_agrees_with_h_rep(raw):
    pts = [tuple(F(c) - F(sum(p), 3) for c in p) for p in raw]
    P = hull(pts)
    for q in [(F(1), F(0), F(-1)), (F(0), F(0), F(0)), pts[0]]:
        assert contains(P, q) == contains_h(P, q)


def test_projection_section_duality():
    rng = np.random.default_rng(9)
    for _ in range(10):
        n = int(rng.integers(3, 6))
        P = random_symmetric_hull(n, rng)
        perm = rng.permutation(n).tolist()
        cut = int(rng.integers(1, n))
        blocks = [perm[:cut], perm[cut:]] if cut < n - 1 or n > 2 else [perm]
        S = section(P, blocks)
        assert polar(Polytope(S.n, S.vertices)) == projection(polar(P), blocks)


def test_supporting_hyperplane_duality():
    rng = np.random.default_rng(10)
    P = random_symmetric_hull(4, rng)
    for f in P.facets:
        y = tuple(F(c) / f.offset for c in f.normal)
        y = tuple(c - sum(y) / len(y) for c in y)
        assert gauge(polar(P), y) == 1
        for v in P.vertices:
            if sum(a * b for a, b in zip(f.normal, v)) == f.offset:
                assert sum(a * b for a, b in zip(v, y)) == 1
