from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from cxtv import geometry as G
from cxtv.errors import DependentSetError, InstanceError

from conftest import rat_vectors


def test_j_squares_to_minus_identity():
    Jm = G.ComplexStructure(3).matrix()
    for i in range(6):
        e = G.unit(6, i)
        assert G.apply_j(G.apply_j(e)) == G.scale(-1, e)
    # orthogonal: J^T J = I
    for i in range(6):
        for j in range(6):
            assert sum(Jm[r][i] * Jm[r][j] for r in range(6)) == (1 if i == j else 0)


def test_make_complex_flat_examples():
    V = G.make_complex_flat((0, 0, 0, 0), [(1, 0, 0, 0)])
    assert V.direction == ((1, 0, 0, 0), (0, 1, 0, 0)) and V.kind == "complex" and V.k == 1
    with pytest.raises(DependentSetError) as ei:
        G.make_complex_flat((0, 0, 0, 0), [(1, 0, 0, 0), (1, 0, 0, 0)])
    assert ei.value.index == 1
    V = G.make_complex_flat((1, 0, 0, 0), [(1, 1, 0, 0)])
    assert V.direction == ((1, 1, 0, 0), (-1, 1, 0, 0))
    # membership check: J of each basis vector solves into the span
    for b in V.direction:
        assert G.coords_in_span(V.direction, G.apply_j(b)) is not None


def test_complex_dependence_over_realification():
    # (1,0,0,0) and (0,1,0,0) = i*(1,0,0,0) are real-independent but complex-dependent
    with pytest.raises(DependentSetError):
        G.make_complex_flat((0,) * 4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    with pytest.raises(InstanceError):
        G.make_complex_flat((0,) * 3, [(1, 0, 0)])


def test_orthogonal_project_examples():
    assert G.orthogonal_project([(1, 0, 0, 0), (0, 1, 0, 0)], (3, 4, 5, 6)) == (0, 0, 5, 6)
    assert G.orthogonal_project([], (3, 4)) == (3, 4)
    assert G.orthogonal_project([(1, 1)], (1, 0)) == (Fr(1, 2), Fr(-1, 2))


def test_is_j_invariant_examples():
    assert not G.is_j_invariant([(1, 0)])
    assert G.is_j_invariant([(1, 0, 0, 0), (0, 1, 0, 0)])
    assert not G.is_j_invariant([(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0)])
    assert G.rank([(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0)]) == 4


@given(st.lists(rat_vectors(6), min_size=1, max_size=3), rat_vectors(6), rat_vectors(6))
def test_projection_properties(B, x, y):
    if G.first_dependent(B) is not None:
        return
    px = G.orthogonal_project(B, x)
    assert G.orthogonal_project(B, px) == px
    for b in B:
        assert G.dot(G.sub(x, px), G.sub(x, px)) >= 0
        assert G.dot(px, b) == 0
    # x - px lies in span(B)
    assert G.in_span(B, G.sub(x, px))
    # self-adjoint
    py = G.orthogonal_project(B, y)
    assert G.dot(px, y) == G.dot(x, py)


@given(st.lists(rat_vectors(6), min_size=1, max_size=3), rat_vectors(6))
def test_constructed_flats_are_j_invariant(vs, base):
    try:
        V = G.make_complex_flat(base, vs)
    except DependentSetError:
        return
    assert G.is_j_invariant(V.direction)
    assert V.kind_violation() is None
    for b in V.direction:
        assert G.in_span(V.direction, G.apply_j(b))


def test_kind_violation_detects_odd_flats():
    V = G.ComplexFlat(G.vec((0, 0, 0, 0)), (G.vec((1, 0, 0, 0)),), "complex", 1)
    assert "dimension" in V.kind_violation()
    V = G.ComplexFlat(G.vec((0, 0, 0, 0)), (G.vec((1, 0, 0, 0)), G.vec((0, 0, 1, 0))), "complex", 1)
    assert "J-invariant" in V.kind_violation()
    W = G.ComplexFlat(G.vec((0,) * 4), (G.vec((1, 0, 0, 0)),), "complex-plus-line", 1)
    assert W.kind_violation() is None
    W = G.ComplexFlat(G.vec((0,) * 6), (G.vec((1, 0, 0, 0, 0, 0)), G.vec((0, 1, 0, 0, 0, 0)),
                                          G.vec((0, 0, 1, 0, 0, 0))), "complex-plus-line", 2)
    assert W.kind_violation() is None


def test_maximal_invariant_subspace():
    B = [G.vec((1, 0, 0, 0, 0, 0)), G.vec((0, 1, 0, 0, 0, 0)), G.vec((0, 0, 1, 0, 0, 0))]
    inv = G.maximal_j_invariant(B)
    assert len(inv) == 2 and G.is_j_invariant(inv)


def test_det_int_matches_fraction_det():
    import random
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 5)
        M = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert G.det_int(M) == G.det(M)


def test_mass_cloud_validation():
    with pytest.raises(InstanceError):
        G.MassCloud(((0, 0),), (Fr(1, 2),))
    with pytest.raises(InstanceError):
        G.MassCloud(())
    c = G.MassCloud.uniform([(0, 0), (1, 1)])
    assert c.weights == (Fr(1, 2), Fr(1, 2))
