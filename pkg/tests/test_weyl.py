import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hoferlie.errors import DimensionTooLarge, MalformedInput, NotDominant
from hoferlie.polytope import contains, hull
from hoferlie.polytope.lp import OPTIMAL, linprog_exact
from hoferlie.weyl import (
    TypeA,
    cartan,
    chamber_generators,
    dominant,
    is_dominant,
    is_regular,
    is_symmetric,
    longest_element,
    orbit_size,
    pairing,
    positive_roots,
    prefix_sums,
    stabilizer_blocks,
    weyl_orbit,
)

sum_zero_ints = st.lists(st.integers(-9, 9), min_size=2, max_size=6).map(lambda v: tuple(F(c) - F(sum(v), len(v)) for c in v))


def test_cartan_validation():
    assert cartan([1, "-1/2", "-1/2"]) == (F(1), F(-1, 2), F(-1, 2))
    assert cartan([0.5, -0.5]) == (0.5, -0.5)
    with pytest.raises(MalformedInput):
        cartan([1, 1])
    with pytest.raises(MalformedInput):
        cartan([0.5, 0.4])


def test_dominant_examples():
    assert dominant((-1, 3, -1, -1)) == (3, -1, -1, -1)
    assert dominant((2, 0, -2)) == (2, 0, -2)


@given(sum_zero_ints)
def test_dominant_unique_member_of_orbit(v):
    d = dominant(v)
    assert sorted(d) == sorted(v)
    assert is_dominant(d)
    if len(v) <= 6:
        orbit = weyl_orbit(v)
        assert d in orbit
        assert [w for w in orbit if is_dominant(w)] == [d]


def test_weyl_orbit_examples():
    assert len(weyl_orbit((3, -1, -1, -1))) == 4
    assert len(weyl_orbit((3, 0, -3))) == 6
    assert weyl_orbit((0, 0, 0)) == {(0, 0, 0)}
    with pytest.raises(DimensionTooLarge):
        weyl_orbit(tuple(range(9)))


@given(sum_zero_ints)
def test_orbit_size_multinomial(v):
    assert orbit_size(v) == len(weyl_orbit(v))


def test_longest_element():
    assert longest_element((3, -1, -1, -1)) == (-1, -1, -1, 3)
    assert longest_element((2, -2)) == (-2, 2)


@given(sum_zero_ints)
def test_longest_element_properties(v):
    assert longest_element(longest_element(v)) == tuple(v)
    assert dominant(tuple(-c for c in longest_element(v))) == dominant(tuple(-c for c in v))
    d = dominant(v)
    assert all(a <= b for a, b in zip(longest_element(d), longest_element(d)[1:]))


def test_regularity():
    assert is_regular((3, 0, -3))
    assert not is_regular((4, 0, 0, -4))
    assert not is_regular((0, 0))
    assert not is_regular((1.0, 1.0 + 1e-9, -2.0 - 1e-9))
    assert is_regular((1.0, 1.0 + 1e-6, -2.0 - 1e-6))


def test_symmetric():
    assert is_symmetric((3, 0, -3))
    assert not is_symmetric((3, -1, -1, -1))
    assert is_symmetric((1, -1))
    with pytest.raises(NotDominant):
        is_symmetric((-1, 1))


def test_stabilizer_blocks():
    assert stabilizer_blocks((3, -1, -1, -1)) == [1, 3]
    assert stabilizer_blocks((4, 0, 0, -4)) == [1, 2, 1]
    assert stabilizer_blocks((3, 1, -4)) == [1, 1, 1]
    with pytest.raises(NotDominant):
        stabilizer_blocks((0, 1, -1))


def test_chamber_generators_small():
    assert chamber_generators(2) == [(F(1, 2), F(-1, 2))]
    assert chamber_generators(3) == [(F(2, 3), F(-1, 3), F(-1, 3)), (F(1, 3), F(1, 3), F(-2, 3))]
    for n in range(2, 7):
        for w in chamber_generators(n):
            assert sum(w) == 0 and is_dominant(w)


def test_chamber_generators_span_chamber_by_lp():
    rng = np.random.default_rng(0)
    for _ in range(100):
        n = int(rng.integers(2, 6))
        r = sorted((F(int(c)) for c in rng.integers(-9, 10, n)), reverse=True)
        v = tuple(c - sum(r) / n for c in r)
        gens = chamber_generators(n)
        A_eq = [[g[j] for g in gens] for j in range(n)]
        res = linprog_exact([0] * len(gens), A_eq=A_eq, b_eq=list(v))
        assert res.status == OPTIMAL
        # the coefficients are the consecutive gaps
        assert list(res.x) == [v[k] - v[k + 1] for k in range(n - 1)]


def test_prefix_sums_pair_with_generators():
    v = (F(3), F(1), F(-4))
    assert prefix_sums(v) == [pairing(w, v) for w in chamber_generators(3)]


@settings(max_examples=50)
@given(sum_zero_ints, sum_zero_ints)
def test_rearrangement(x, y):
    if len(x) != len(y):
        return
    dx, dy = dominant(x), dominant(y)
    best = max(pairing(dx, w) for w in itertools.permutations(dy))
    assert best == pairing(dx, dy)


def test_positive_roots_and_descriptor():
    assert len(positive_roots(4)) == 6
    W = TypeA(3)
    assert len(W.orbit((1, 0, -1))) == 6
    assert W.longest((1, 2, 3)) == (3, 2, 1)
    assert len(W.chamber_generators()) == 2
    with pytest.raises(ValueError):
        TypeA(1)


def test_orbit_hull_contains_dominant_rearrangements():
    P = hull(weyl_orbit((F(2), F(0), F(-2))))
    assert contains(P, (F(1), F(0), F(-1)))
    assert not contains(P, (F(3), F(-1), F(-2)))
