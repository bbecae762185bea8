from fractions import Fraction as Fr
import random

import pytest
from hypothesis import given, strategies as st

from cxtv import geometry as G
from cxtv.depth import (centerpoint_barycenter, centerpoint_region, flat_depth,
                        region_is_empty, tukey_depth)
from cxtv.errors import NoBarycenterError, UnsupportedDimensionError
from cxtv.geometry import MassCloud

from conftest import rat_vectors
from oracles import grid_depth_1d, planar_depth

SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]
TRIANGLE = [(0, 0), (1, 0), (0, 1)]


def random_cloud(rng, m, n, den=4, weighted=False, span=3):
    pts = [tuple(Fr(rng.randint(-span * den, span * den), den) for _ in range(m)) for _ in range(n)]
    if weighted:
        raw = [rng.randint(1, 5) for _ in pts]
        w = tuple(Fr(x, sum(raw)) for x in raw)
        return MassCloud(tuple(pts), w)
    return MassCloud.uniform(pts)


def test_single_atom():
    assert tukey_depth(MassCloud.uniform([(1, 2)]), (1, 2)).value == 1


def test_triangle_vertex_and_square_center():
    assert tukey_depth(MassCloud.uniform(TRIANGLE), (0, 0)).value == Fr(1, 3)
    assert planar_depth(TRIANGLE, [Fr(1, 3)] * 3, (0, 0)) == Fr(1, 3)
    assert tukey_depth(MassCloud.uniform(SQUARE), (Fr(1, 2), Fr(1, 2))).value == Fr(1, 2)
    assert planar_depth(SQUARE, [Fr(1, 4)] * 4, (Fr(1, 2), Fr(1, 2))) == Fr(1, 2)


def test_unsupported_dimension():
    with pytest.raises(UnsupportedDimensionError):
        tukey_depth(MassCloud.uniform([(0,) * 7]), (0,) * 7)


@given(st.integers(0, 10**9))
def test_planar_oracle_and_witness(seed):
    rng = random.Random(seed)
    cloud = random_cloud(rng, 2, rng.randint(1, 9), weighted=rng.random() < 0.3, span=2)
    q = rng.choice([rng.choice(cloud.points),
                    tuple(Fr(rng.randint(-8, 8), 4) for _ in range(2))])
    dv = tukey_depth(cloud, q)
    assert dv.value == planar_depth(cloud.points, cloud.weights, q)
    assert cloud.weight_of(dv.witness_normal, dv.witness_offset) == dv.value
    assert G.dot(dv.witness_normal, q) == dv.witness_offset


@given(st.integers(0, 10**9))
def test_depth_in_line(seed):
    rng = random.Random(seed)
    cloud = random_cloud(rng, 1, rng.randint(1, 7), weighted=True)
    q = (Fr(rng.randint(-12, 12), 4),)
    assert tukey_depth(cloud, q).value == grid_depth_1d(cloud.points, cloud.weights, q)


@given(st.integers(0, 10**9))
def test_depth_affine_invariance(seed):
    # depth is invariant under invertible affine maps; compare in R^3
    rng = random.Random(seed)
    cloud = random_cloud(rng, 3, rng.randint(1, 8), den=2)
    q = rng.choice(cloud.points + (tuple(Fr(rng.randint(-4, 4), 2) for _ in range(3)),))
    while True:
        A = [[Fr(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        if G.det(A) != 0:
            break
    shift = [Fr(rng.randint(-5, 5)) for _ in range(3)]
    img = MassCloud(tuple(G.add(G.matvec(A, p), shift) for p in cloud.points), cloud.weights)
    assert tukey_depth(cloud, q).value == tukey_depth(img, G.add(G.matvec(A, q), shift)).value


def test_hexagon_flat_depth():
    # projections of the points to the (e2, e3) plane form a regular-ish hexagon
    hexagon = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)]
    pts = [(i, -i, x, y) for i, (x, y) in enumerate(hexagon)]
    cloud = MassCloud.uniform(pts)
    V = G.make_complex_flat((0, 0, 0, 0), [(1, 0, 0, 0)])
    dv = flat_depth(cloud, V)
    # closed halfplanes through the centre of a centrally symmetric hexagon
    # hold at least half the points; open ones would give 1/3
    assert dv.value == planar_depth(hexagon, [Fr(1, 6)] * 6, (0, 0)) == Fr(1, 2)
    assert cloud.weight_of(dv.witness_normal, dv.witness_offset) == dv.value
    for b in V.direction:
        assert G.dot(b, dv.witness_normal) == 0


def test_flat_depth_trivial_cases():
    cloud = MassCloud.uniform([(1, 2, 3, 4), (0, 0, 0, 0)])
    V = G.make_complex_flat((0,) * 4, [(1, 0, 0, 0), (0, 0, 1, 0)])
    assert flat_depth(cloud, V).value == 1
    atom = MassCloud.uniform([(3, 4)])
    assert flat_depth(atom, G.ComplexFlat(G.vec((3, 4)), (), "complex", 0)).value == 1


@given(st.integers(0, 10**9))
def test_projection_consistency(seed):
    rng = random.Random(seed)
    cloud = random_cloud(rng, 4, rng.randint(2, 9), den=2)
    v = tuple(Fr(rng.randint(-3, 3)) for _ in range(4))
    if G.is_zero(v):
        return
    base = tuple(Fr(rng.randint(-3, 3), 2) for _ in range(4))
    V = G.make_complex_flat(base, [v])
    # independent route: explicit quotient coordinates through the orthogonal projector
    proj = [G.orthogonal_project(V.direction, p) for p in cloud.points]
    qb = G.orthogonal_project(V.direction, V.base)
    # coordinates in the 2-dim complement: pick a basis of the complement via J-pair of a vector
    comp = G.complement_rows(V.direction, 4)
    coords = MassCloud(tuple(tuple(G.dot(c, x) for c in comp) for x in proj), cloud.weights)
    expected = tukey_depth(coords, tuple(G.dot(c, qb) for c in comp)).value
    assert flat_depth(cloud, V).value == expected


# ---- regions -------------------------------------------------------------


def test_region_examples():
    r = centerpoint_region(MassCloud.uniform([(1, 2)]), 1)
    assert r.vertices == ((1, 2),)
    tri = MassCloud.uniform(TRIANGLE)
    r = centerpoint_region(tri, Fr(1, 3))
    assert set(r.vertices) == set(G.vec(p) for p in TRIANGLE)
    assert centerpoint_barycenter(tri, Fr(1, 3)) == (Fr(1, 3), Fr(1, 3))
    sq = MassCloud.uniform(SQUARE)
    assert centerpoint_barycenter(sq, Fr(1, 2)) == (Fr(1, 2), Fr(1, 2))
    assert centerpoint_region(sq, Fr(1, 2)).vertices == ((Fr(1, 2), Fr(1, 2)),)


def test_triangle_region_against_grid_oracle():
    tri = MassCloud.uniform(TRIANGLE)
    r = centerpoint_region(tri, Fr(1, 3))
    for i in range(-2, 11):
        for j in range(-2, 11):
            q = (Fr(i, 8), Fr(j, 8))
            inside = planar_depth(TRIANGLE, tri.weights, q) >= Fr(1, 3)
            assert r.contains(q) == inside


def test_empty_region_and_barycenter_error():
    sq = MassCloud.uniform(SQUARE)
    r = centerpoint_region(sq, Fr(3, 4))
    assert r.empty and region_is_empty(r)
    with pytest.raises(NoBarycenterError):
        centerpoint_barycenter(sq, Fr(3, 4))


def test_degenerate_cloud_region_lives_in_affine_hull():
    c = MassCloud.uniform([(0, 0, 0), (2, 2, 0), (4, 4, 0)])
    r = centerpoint_region(c, Fr(1, 2))
    assert r.vertices == ((2, 2, 0),)


@given(st.integers(0, 10**9), st.sampled_from([1, 2, 3]))
def test_region_vertices_have_depth(seed, m):
    rng = random.Random(seed)
    cloud = random_cloud(rng, m, rng.randint(1, 7), den=2, weighted=rng.random() < 0.3)
    t = Fr(1, m + 1)
    r = centerpoint_region(cloud, t)
    assert not r.empty
    for v in r.vertices:
        assert tukey_depth(cloud, v).value >= t
        assert r.contains(v)


@given(st.integers(0, 10**9))
def test_region_matches_depth_on_grid(seed):
    rng = random.Random(seed)
    cloud = random_cloud(rng, 2, rng.randint(3, 7), den=1, span=2)
    t = rng.choice([Fr(1, 7), Fr(1, 4), Fr(1, 3), Fr(2, 5)])
    r = centerpoint_region(cloud, t)
    for _ in range(10):
        q = (Fr(rng.randint(-10, 10), 4), Fr(rng.randint(-10, 10), 4))
        assert r.contains(q) == (planar_depth(cloud.points, cloud.weights, q) >= t)


@given(st.integers(0, 10**9))
def test_region_monotone(seed):
    rng = random.Random(seed)
    cloud = random_cloud(rng, 2, rng.randint(3, 8), den=2)
    small = centerpoint_region(cloud, Fr(1, 4))
    big = centerpoint_region(cloud, Fr(1, 3))
    for v in big.vertices:
        assert small.contains(v)
