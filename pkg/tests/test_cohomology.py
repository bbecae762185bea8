from fractions import Fraction as Fr
from itertools import product
import random

import pytest
from hypothesis import given, settings, strategies as st

from cxtv.cohomology import (SchurClass, chern_ring, conjugate, euler_power_nonvanishing, fits, from_chern,
                             gaussian_binomial, presentation_ideal, projectivization_nonvanishing,
                             rectangle_partitions, reduce_x_power, schur_multiply, splitting_pullback,
                             splitting_ring, to_chern)
from cxtv.errors import RingMismatch
from cxtv.poly import elementary

from oracles import QuotientRing, q_binomial


def S(lam, k, d, p=None):
    return SchurClass.basis(lam, k, d, p)


def test_ideal_examples():
    R = chern_ring(2)
    c1, c2 = R.gens()
    assert presentation_ideal(2, 3) == [c1 * c1 - c2, -(c1 ** 3) + 2 * c1 * c2]
    for d in range(1, 7):
        (g,) = presentation_ideal(1, d)
        assert g == chern_ring(1).monomial((d,), (-1) ** d)
    # top case: relations in degrees 1..d, the ring collapses to Z
    gens = presentation_ideal(3, 3)
    assert [sorted(g.degrees()) for g in gens] == [[2], [4], [6]]
    assert rectangle_partitions(3, 3) == [()]


def test_schur_examples():
    assert schur_multiply(S((1,), 1, 3), S((1,), 1, 3)) == S((2,), 1, 3)
    assert schur_multiply(S((2,), 1, 3), S((1,), 1, 3)).is_zero()
    assert S((1, 1), 2, 4) * S((1, 1), 2, 4) == S((2, 2), 2, 4)
    a = S((2, 1), 2, 5) + S((1,), 2, 5).scale(3)
    assert a * SchurClass.one(2, 5) == a


def test_sigma1_fourth_power_in_g24():
    # the classical count of lines meeting four general lines in P^3
    assert (S((1,), 2, 4) ** 4).coeffs == {(2, 2): 2}


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        S((1,), 2, 4) * S((1,), 2, 5)
    with pytest.raises(RingMismatch):
        S((1,), 2, 4, 2) + S((1,), 2, 4, 3)


def test_rectangle_invariant():
    with pytest.raises(ValueError):
        SchurClass(2, 4, None, {(3,): 1})
    assert not SchurClass(2, 4, 3, {(1,): 3}).coeffs  # zero coefficients are not stored


@pytest.mark.parametrize("k,d", [(k, d) for d in range(1, 7) for k in range(0, d + 1)])
def test_poincare_series(k, d):
    counts = [0] * (k * (d - k) + 1)
    for lam in rectangle_partitions(k, d):
        counts[sum(lam)] += 1
    assert counts == gaussian_binomial(d, k) == q_binomial(d, k)


def _random_class(rng, k, d, p=None):
    parts = rectangle_partitions(k, d)
    return SchurClass(k, d, p, {rng.choice(parts): rng.randint(-3, 3) for _ in range(3)})


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 4), (2, 5), (3, 6), (1, 4)]), st.sampled_from([None, 2, 5]))
def test_associative_commutative(seed, kd, p):
    rng = random.Random(seed)
    k, d = kd
    a, b, c = (_random_class(rng, k, d, p) for _ in range(3))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_pullback_is_ring_map(seed, k):
    rng = random.Random(seed)
    R = chern_ring(k)
    def rand_poly():
        f = R.zero()
        for _ in range(3):
            f = f + R.monomial([rng.randint(0, 2) for _ in range(k)], rng.randint(-3, 3))
        return f
    f, g = rand_poly(), rand_poly()
    assert splitting_pullback(f * g) == splitting_pullback(f) * splitting_pullback(g)
    assert splitting_pullback(f + g) == splitting_pullback(f) + splitting_pullback(g)


def test_pullback_examples():
    for k in range(1, 5):
        R, U = chern_ring(k), splitting_ring(k)
        top = R.gen(k - 1)
        assert splitting_pullback(top) == U.monomial((1,) * k)
        assert splitting_pullback(R.gen(0)) == elementary(U, 1)
        assert splitting_pullback(R.one()) == U.one()


@pytest.mark.parametrize("k,d", [(k, d) for d in range(1, 6) for k in (1, 2) if k <= d])
def test_schur_matches_quotient_ring(k, d):
    Q = QuotientRing(k, d)
    R = chern_ring(k)
    top = k * (d - k)  # c-weighted degree bound, i.e. cohomological degree 2k(d-k)
    monos = [e for e in product(range(top + 1), repeat=k)
             if sum((i + 1) * a for i, a in enumerate(e)) <= top]
    for e in monos:
        brute = Q.from_terms([(e, 1)])
        schur = from_chern(R.monomial(e), k, d)
        model = Q.from_terms([(exps, c) for exps, c in to_chern(schur).terms.items()])
        assert Q.normal_form(brute - model) == 0, e
    # products of pairs of basis classes
    basis = rectangle_partitions(k, d)
    for a in basis:
        for b in basis:
            prod_s = to_chern(S(a, k, d) * S(b, k, d))
            pa, pb = to_chern(S(a, k, d)), to_chern(S(b, k, d))
            lhs = Q.from_terms([(x, c) for x, c in prod_s.terms.items()])
            rhs = Q.from_terms([(x, c) for x, c in (pa * pb).terms.items()])
            assert Q.normal_form(lhs - rhs) == 0, (a, b)


@pytest.mark.parametrize("k,d", [(2, 4), (2, 5), (3, 5)])
def test_chern_schur_roundtrip(k, d):
    for lam in rectangle_partitions(k, d):
        assert from_chern(to_chern(S(lam, k, d)), k, d) == S(lam, k, d)


def test_conjugate():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(()) == ()
    assert fits((2, 2), 2, 4) and not fits((3,), 2, 4)


def test_euler_power_examples():
    for d in range(1, 7):
        assert euler_power_nonvanishing(1, d, 0, 2)[0]
        for p in (2, 3, 5):
            assert euler_power_nonvanishing(1, d, d - 1, p)[0]
            assert not euler_power_nonvanishing(1, d, d, p)[0]


def test_euler_power_sweep():
    for d in range(2, 7):
        for n in range(1, d):
            for p in (2, 3, 5):
                ok, cls = euler_power_nonvanishing(n, d, d - n, p)
                assert ok
                assert cls.coeffs == {(d - n,) * n: 1}


def test_projectivization():
    assert projectivization_nonvanishing(1, 2, 0)
    for d in range(2, 6):
        for n in range(1, d):
            assert projectivization_nonvanishing(n, d, d - n)
    assert not projectivization_nonvanishing(1, 2, 2)


def test_projectivization_relation_hand_case():
    # n=1, d=2: x^2 = w_2(gamma^perp) = s_(1), and x^3 = x s_(1)
    red = reduce_x_power(1, 2, 2)
    assert red == {0: S((1,), 1, 2, 2)}
    assert reduce_x_power(1, 2, 3) == {1: S((1,), 1, 2, 2)}
    assert reduce_x_power(1, 2, 4) == {}
