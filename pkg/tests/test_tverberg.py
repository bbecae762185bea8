from dataclasses import replace
from fractions import Fraction as Fr
from itertools import product
import random

import pytest
from hypothesis import given, settings, strategies as st

from cxtv import geometry as G
from cxtv.charts import GrassmannChart
from cxtv.errors import InstanceError
from cxtv.lp import ExactLP, lp_feasible
from cxtv.tverberg import (TverbergCert, TvInstance, TvReport, feasible_given_direction, halfspace_part_count,
                           hull_weights, partitions, required_size, search_tv, verify_tv)

from oracles import stirling2

DEN = 2 ** 16


def generic_sets(seed, sizes, n=4):
    rng = random.Random(seed)
    return [[tuple(Fr(rng.randint(-DEN, DEN), DEN) for _ in range(n)) for _ in range(s)] for s in sizes]


def brute_partitions(n, r):
    """Every labelling, canonicalized by first occurrence."""
    seen = set()
    for lab in product(range(r), repeat=n):
        if len(set(lab)) != r:
            continue
        ren, out = {}, []
        for x in lab:
            ren.setdefault(x, len(ren))
            out.append(ren[x])
        seen.add(tuple(out))
    return seen


def test_required_size():
    assert required_size(2, 2, 1) == 4
    assert required_size(3, 2, 1) == 7
    assert required_size(2, 2, 1, "complex-plus-line") == 5


@pytest.mark.parametrize("n,r", [(n, r) for n in range(1, 9) for r in range(1, n + 1)])
def test_partition_counts(n, r):
    got = list(partitions(n, r))
    assert len(got) == stirling2(n, r)
    if n <= 7:
        rgs = set()
        for parts in got:
            lab = [None] * n
            for j, p in enumerate(parts):
                for i in p:
                    lab[i] = j
            rgs.add(tuple(lab))
        assert rgs == brute_partitions(n, r)


def test_partition_examples():
    assert len(list(partitions(4, 2))) == 7
    assert list(partitions(3, 3)) == [[[0], [1], [2]]]
    rainbow = list(partitions(3, 2, ["a", "a", "b"]))
    assert len(rainbow) == 2
    assert all(sorted(p) != [0, 1] for parts in rainbow for p in parts)


def test_partitions_are_in_rgs_order():
    labs = []
    for parts in partitions(5, 3):
        lab = [0] * 5
        for j, p in enumerate(parts):
            for i in p:
                lab[i] = j
        labs.append(tuple(lab))
    assert labs == sorted(labs)


def test_lp_square_hull():
    sq = [(0, 0), (1, 0), (0, 1), (1, 1)]
    w = hull_weights(sq, (Fr(1, 3), Fr(1, 3)))
    assert w is not None and sum(w) == 1 and all(x >= 0 for x in w)
    assert G.lincomb(w, sq, 2) == (Fr(1, 3), Fr(1, 3))
    assert hull_weights(sq, (2, 0)) is None


def test_instance_size_rejected():
    with pytest.raises(InstanceError, match="size formula"):
        TvInstance(2, 1, generic_sets(0, [4, 5]), [2, 2])


def test_colour_class_too_large_rejected():
    sets = generic_sets(0, [7, 7])
    with pytest.raises(InstanceError, match="color class"):
        TvInstance(2, 1, sets, [3, 3], colors=[[0, 0, 0, 1, 1, 2, 2], [0, 0, 1, 1, 2, 2, 3]])


def test_single_point_sets():
    sets = generic_sets(3, [1, 1])
    inst = TvInstance(2, 1, sets, [1, 1])
    cert = search_tv(inst)
    assert isinstance(cert, TverbergCert)
    assert verify_tv(cert, inst)
    assert all(cert.flat.contains_point(P[0]) for P in sets)


def test_diagonals_of_projected_quadrilateral():
    # d=2, k=1, chart with W spanned by e_2: the projection keeps complex coordinate 2
    inst = TvInstance(2, 1, [[(0, 0, 0, 0), (5, 1, 1, 0), (-3, 2, 1, 1), (7, 7, 0, 1)], [(0,) * 4]], [2, 1])
    rows = GrassmannChart.from_params(2, (1,), [0, 0]).rows()
    got = feasible_given_direction(inst, rows, ([[0, 2], [1, 3]], [[0]]))
    assert got is None  # the single point of set 1 projects to the origin, not the crossing
    inst2 = TvInstance(2, 1, [inst.sets[0], [(9, 9, Fr(1, 2), Fr(1, 2))]], [2, 1])
    got = feasible_given_direction(inst2, rows, ([[0, 2], [1, 3]], [[0]]))
    assert got is not None
    q, _ = got
    assert tuple(q) == (Fr(1, 2), Fr(1, 2))  # diagonals (0,0)-(1,1) and (1,0)-(0,1) cross here


def test_separated_parts_infeasible():
    far = [(0, 0, 0, 0), (0, 0, 1, 0), (0, 0, 10, 0), (0, 0, 11, 0)]
    inst = TvInstance(2, 1, [far, [(0,) * 4]], [2, 1])
    rows = GrassmannChart.from_params(2, (1,), [0, 0]).rows()
    assert feasible_given_direction(inst, rows, ([[0, 1], [2, 3]], [[0]])) is None


def test_clustered_instance_is_feasible():
    # each part is a pair p +- v, so every part's hull contains p and q is the image of p
    rng = random.Random(11)
    p = (Fr(1, 3), Fr(-1, 5), Fr(2, 7), Fr(1, 2))
    sets = []
    for _ in range(2):
        P = []
        for _ in range(2):
            v = tuple(Fr(rng.randint(-9, 9), 100) for _ in range(4))
            P += [G.add(p, v), G.sub(p, v)]
        sets.append(P)
    inst = TvInstance(2, 1, sets, [2, 2])
    rows = GrassmannChart.from_params(2, (1,), [Fr(1, 3), Fr(-2, 5)]).rows()
    got = feasible_given_direction(inst, rows, ([[0, 1], [2, 3]], [[0, 1], [2, 3]]))
    assert got is not None
    assert tuple(got[0]) == tuple(G.matvec(rows, p))


@pytest.fixture(scope="module")
def found():
    for seed in range(40):
        inst = TvInstance(2, 1, generic_sets(seed, [4, 4]), [2, 2])
        cert = search_tv(inst)
        if isinstance(cert, TverbergCert):
            return cert, inst
    pytest.fail("no certificate among 40 seeds")


def test_search_output_verifies(found):
    cert, inst = found
    v = verify_tv(cert, inst)
    assert v, v.reason


def test_mutation_move_index(found):
    cert, inst = found
    parts = [[list(p) for p in ps] for ps in cert.partitions]
    src = next(j for j, p in enumerate(parts[0]) if len(p) > 1)
    dst = 1 - src if len(parts[0]) == 2 else (src + 1) % len(parts[0])
    parts[0][dst].append(parts[0][src].pop())
    assert not verify_tv(replace(cert, partitions=parts), inst)


def test_mutation_perturb_weight(found):
    cert, inst = found
    wits = [[list(w) for w in ws] for ws in cert.witnesses]
    j = next(j for j, w in enumerate(wits[0]) if len(w) > 1)
    (a, x), (b, y) = wits[0][j][0], wits[0][j][1]
    wits[0][j][0], wits[0][j][1] = (a, x + Fr(1, 97)), (b, y - Fr(1, 97))
    v = verify_tv(replace(cert, witnesses=wits), inst)
    assert not v


def test_mutation_wrong_q(found):
    cert, inst = found
    q = list(cert.q)
    q[0] += 1
    assert not verify_tv(replace(cert, q=tuple(q)), inst)


@settings(max_examples=40)
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2), st.integers(-3, 3))
def test_halfspace_part_count(coeffs, off):
    cert, inst = _found_cache()
    # halfspaces containing V: normal in the row space of the complement rows, offset matching V
    R = G.complement_rows(cert.flat.direction, 4)
    a = [Fr(c) for c in coeffs] + [Fr(off), Fr(1)]
    normal = G.lincomb(a[: len(R)], R, 4)
    if G.is_zero(normal):
        return
    offset = G.dot(normal, cert.flat.base)
    counts = halfspace_part_count(cert, inst, normal, offset)
    assert counts == inst.r  # every part meets V, so it has a point in every halfspace containing V


_cache = {}


def _found_cache():
    if "x" not in _cache:
        for seed in range(40):
            inst = TvInstance(2, 1, generic_sets(seed, [4, 4]), [2, 2])
            cert = search_tv(inst)
            if isinstance(cert, TverbergCert):
                _cache["x"] = (cert, inst)
                break
    return _cache["x"]


def test_colorful_search_verifies_when_found():
    hits = 0
    for seed in range(4):
        sets = generic_sets(seed, [7, 7])
        inst = TvInstance(2, 1, sets, [3, 3], colors=[[0, 0, 1, 1, 2, 2, 3]] * 2)
        res = search_tv(inst)
        if isinstance(res, TverbergCert):
            hits += 1
            assert verify_tv(res, inst)
        else:
            assert isinstance(res, TvReport)


def test_out_of_theorem_label():
    inst = TvInstance(2, 1, generic_sets(0, [(6 - 1) * 3 + 1, 1]), [6, 1])
    assert not inst.in_theorem()
    assert TvInstance(2, 1, generic_sets(0, [4, 7]), [2, 3]).in_theorem() is False
    assert TvInstance(2, 1, generic_sets(0, [4, 10]), [2, 4]).in_theorem()


def test_lp_replay_infeasible_certificate():
    lp = ExactLP(1)
    lp.add_ub([-1], -1)
    lp.add_ub([1], 0)
    res = lp_feasible(lp)
    assert not res.feasible and lp.check_farkas(res.farkas_ub, res.farkas_eq)
