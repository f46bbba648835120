from fractions import Fraction as F

import numpy as np
import pytest

from hoferlie.batteries import random_dominant, random_regular_dominant
from hoferlie.errors import DimensionMismatch, MalformedInput, NotFull
from hoferlie.kirwan import (
    DICHOTOMY_KINDS,
    KirwanInput,
    commuting_hamiltonians,
    product_compose,
    regular_orbit_equivalence,
    vertex_condition,
)
from hoferlie.norms import NormKind, OrbitFamily, hofer_polytope, weyl_chamber_norm_test
from hoferlie.polytope import minkowski_sum
from hoferlie.weyl import is_regular

H = NormKind.HOFER


def V(*cs):
    return tuple(F(c) for c in cs)


SU4 = KirwanInput(4, (V(3, -1, -1, -1),), "su4")
SU3 = KirwanInput(3, (V(2, -1, -1),), "su3")
REG3 = KirwanInput(3, (V(1, 0, -1),), "reg")


def test_singular_example():
    rep = commuting_hamiltonians(SU4)
    assert not rep.commuting
    assert rep.verdicts[H].witness == V(4, 0, 0, -4)
    assert rep.vertex_counts[H] == 12
    assert rep.regular_orbit_equivalent is None and rep.route is None
    assert rep.labels == ("su4",)


def test_regular_example():
    rep = commuting_hamiltonians(SU3)
    assert rep.commuting
    assert rep.regular_orbit_equivalent == V(3, 0, -3)
    assert rep.route == "vertex-condition"
    assert rep.vertex_counts[H] == 6
    assert set(rep.verdicts) == set(DICHOTOMY_KINDS)


def test_vertex_condition_examples():
    assert vertex_condition(SU3.family) == V(3, 0, -3)
    assert vertex_condition(SU4.family) is None
    # two vertices: the first dominates the second in the chamber order
    E = OrbitFamily(3, (V(2, 0, -2), V(1, 0, -1)))
    assert vertex_condition(E) == V(4, 0, -4)


def test_vertex_condition_is_sufficient():
    rng = np.random.default_rng(0)
    for _ in range(60):
        n = int(rng.integers(2, 5))
        k = int(rng.integers(1, 4))
        try:
            E = OrbitFamily(n, tuple(random_dominant(n, rng) for _ in range(k)))
        except NotFull:
            continue
        y, route = regular_orbit_equivalence(E)
        if vertex_condition(E) is not None:
            assert route == "vertex-condition"
            assert set(hofer_polytope(E, H).vertices) == set(hofer_polytope(OrbitFamily.orbit(tuple(c / 2 for c in y)), H).vertices)
        if y is not None:
            assert is_regular(y)


def test_vertex_route_matches_direct_polytope_test():
    rng = np.random.default_rng(1)
    for _ in range(200):
        n = int(rng.integers(3, 5))
        try:
            E = OrbitFamily(n, tuple(random_dominant(n, rng) for _ in range(int(rng.integers(1, 4)))))
        except NotFull:
            continue
        y, route = regular_orbit_equivalence(E)
        direct = weyl_chamber_norm_test(E, H)
        assert y == direct
        assert route == (None if y is None else "vertex-condition") or route == "polytope"


def test_product_of_examples():
    composite, rep = product_compose([REG3, SU3])
    assert composite.vertices == (V(3, -1, -2),)
    assert rep.commuting and rep.regular_orbit_equivalent == V(5, 0, -5)
    assert rep.labels == ("reg", "su3")


def test_product_singular_factors():
    composite, rep = product_compose([SU4, SU4])
    assert composite.vertices == (V(6, -2, -2, -2),)
    assert not rep.commuting


def test_product_composite_is_sum_of_factor_polytopes():
    rng = np.random.default_rng(2)
    for _ in range(10):
        n = int(rng.integers(2, 5))
        fs = [KirwanInput(n, (random_regular_dominant(n, rng),)) for _ in range(2)]
        composite, rep = product_compose(fs)
        total = minkowski_sum(hofer_polytope(fs[0].family, H), hofer_polytope(fs[1].family, H))
        assert hofer_polytope(composite.family, H) == total
        assert rep.commuting


def test_product_validation():
    with pytest.raises(MalformedInput):
        product_compose([])
    with pytest.raises(DimensionMismatch):
        product_compose([SU3, SU4])
