from fractions import Fraction as Fr
import random

import pytest
from hypothesis import given, settings, strategies as st

from cxtv import geometry as G
from cxtv.errors import HypothesisViolation, InstanceError
from cxtv.gadgets import (battery, inradius_squared_less, make_too_many_measures_instance,
                          make_tight_depth_instance, point_max_min_depth, projection_matrix, projection_norm_check,
                          separating_halfspace, simplex_vertices, tight_centers)
from cxtv.search import SearchConfig
from cxtv.transversal import TransversalCert, search_transversal, verify_transversal

from conftest import rat_vectors


def test_battery():
    assert battery((1, 2), Fr(1, 4), 1) == [(1, 2)]
    b = battery((0, 0, 0, 0), 1, 8)
    assert len(b) == 8 and G.lincomb([1] * 8, b, 4) == (0, 0, 0, 0)
    assert all(G.dot(p, p) <= 1 for p in b)


def test_tight_instance_shapes():
    inst = make_tight_depth_instance(1, 0, Fr(1, 8))
    assert len(inst.centers[0]) == 3
    e2 = Fr(1, 64)
    assert inst.centers[0] == [(-e2, -e2), (e2, 0), (0, e2)]  # x_0 = -(1 + i) eps^2
    inst = make_tight_depth_instance(2, 1, Fr(1, 8))
    assert inst.centers[0] == [(0, 0, -e2, -e2), (0, 0, e2, 0), (0, 0, 0, e2)]
    assert inst.centers[1] == [(1, 0, 0, 0)]
    assert len(make_tight_depth_instance(3, 0, Fr(1, 8)).centers[0]) == 7
    inst = make_tight_depth_instance(2, 1, Fr(1, 16), 8)
    assert [len(m) for m in inst.measures] == [24, 8]


def test_range_checks():
    with pytest.raises(InstanceError):
        make_tight_depth_instance(2, 2, Fr(1, 8))
    with pytest.raises(InstanceError):
        make_tight_depth_instance(2, 1, Fr(1, 2))


def test_tight_gadget_is_tight():
    inst = make_tight_depth_instance(2, 1, Fr(1, 16), 8)
    cert = search_transversal(inst.measures, 1, SearchConfig(seed=0))
    assert isinstance(cert, TransversalCert)
    assert verify_transversal(cert, inst.measures)
    assert cert.depths[0].value == Fr(1, 3)


def test_too_many_measures():
    inst = make_too_many_measures_instance(1, 0, Fr(1, 8))
    assert len(inst.measures) == 2
    assert point_max_min_depth(inst)[0] == 0
    inst = make_too_many_measures_instance(2, 0, Fr(1, 8))
    assert point_max_min_depth(inst)[0] == 0


def test_inradius():
    # R(2) = 3 / (sqrt 2 + 2 sqrt 5) = 0.50969...
    assert inradius_squared_less(2, Fr(50, 100))
    assert not inradius_squared_less(2, Fr(51, 100))
    assert not inradius_squared_less(2, 1)
    assert inradius_squared_less(3, Fr(1, 4))


def test_separating_examples():
    j, H = separating_halfspace(2, Fr(1, 10), (1, 0))
    assert j == 1 and H.contains((1, 0))
    j, H = separating_halfspace(2, Fr(1, 3), (0, 0))
    assert H.contains((0, 0))
    with pytest.raises(HypothesisViolation):
        separating_halfspace(2, 1, (0, 0))


@settings(max_examples=80)
@given(st.sampled_from([2, 3]), st.data())
def test_separating_postconditions(m, data):
    q = data.draw(rat_vectors(m))
    r = data.draw(st.sampled_from([Fr(1, 10), Fr(1, 4), Fr(1, 3)]))  # R(3) ~ 0.342
    j, H = separating_halfspace(m, r, q)
    V = simplex_vertices(m)
    assert H.contains(q) and H.contains(V[j])
    assert all(H.misses_open_ball(V[l], r) for l in range(m + 1) if l != j)


def test_projection_exact_centres_is_orthogonal():
    M = projection_matrix(2, 1, [(0, 0, 0, 0), (1, 0, 0, 0)])
    assert M == [[0, 0, 1, 0], [0, 0, 0, 1]]
    rep = projection_norm_check(2, 1, 0, 3)
    assert rep and rep.max_norm_sq == 1


def test_projection_norm_small_epsilon():
    rep = projection_norm_check(2, 1, Fr(1, 100), 30, seed=1)
    assert rep.passed and rep.degenerate == 0
