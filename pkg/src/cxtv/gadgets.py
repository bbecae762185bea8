"""Optimality gadgets for the complex central transversal bound, and checkable lemmas.

Balls of measure are replaced by batteries: symmetric rational point sets
(a centre, when the size is odd, plus +-r e_a pairs along successive real axes).
Complex coordinate j of C^d sits at real indices 2j, 2j+1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from . import geometry as G
from . import search as S
from .depth import flat_depth, tukey_depth
from .errors import HypothesisViolation, InstanceError
from .geometry import MassCloud
from .transversal import transversal_bound, transversal_family


def battery(center: Sequence, radius, size: int) -> list:
    if size < 1:
        raise InstanceError("battery size must be at least 1")
    c = G.vec(center)
    n = len(c)
    pts = [c] if size % 2 else []
    for idx in range(size // 2):
        axis, layer = idx % n, idx // n
        rr = Fraction(radius) / (layer + 1)
        e = G.scale(rr, G.unit(n, axis))
        pts += [G.add(c, e), G.sub(c, e)]
    return pts


def complex_unit(d: int, j: int, imaginary: bool = False) -> tuple:
    """e_j (1-based) or i*e_j in R^{2d}."""
    return G.unit(2 * d, 2 * (j - 1) + (1 if imaginary else 0))


@dataclass
class GadgetInstance:
    d: int
    k: int
    epsilon: Fraction
    measures: list
    construction: str  # "tight-depth", "too-many-measures" or "odd-exploratory"
    battery_size: int = 1
    centers: list = field(default_factory=list)  # per measure, list of battery centres


def _check_range(d, k, eps):
    if not 0 <= k < d <= 3:
        raise InstanceError(f"need 0 <= k < d <= 3, got k={k}, d={d}")
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 4):
        raise InstanceError(f"epsilon must lie in (0, 1/4), got {eps}")
    return eps


def tight_centers(d: int, k: int, eps: Fraction) -> list:
    """x_0, ..., x_{2(d-k)}: eps^2 e_{k+1}, eps^2 i e_{k+1}, ..., and x_0 = -(sum of the others)."""
    xs = []
    for j in range(k + 1, d + 1):
        for im in (False, True):
            xs.append(G.scale(eps * eps, complex_unit(d, j, im)))
    x0 = G.scale(-1, G.lincomb([1] * len(xs), xs, 2 * d))
    return [x0] + xs


def make_tight_depth_instance(d: int, k: int, epsilon, battery_size: int = 1) -> GadgetInstance:
    eps = _check_range(d, k, epsilon)
    centers0 = tight_centers(d, k, eps)
    cloud0 = [p for x in centers0 for p in battery(x, eps ** 3, battery_size)]
    measures = [MassCloud(cloud0)]
    centers = [centers0]
    for j in range(1, k + 1):
        e = complex_unit(d, j)
        measures.append(MassCloud(battery(e, eps, battery_size)))
        centers.append([e])
    return GadgetInstance(d, k, eps, measures, "tight-depth", battery_size, centers)


def make_too_many_measures_instance(d: int, k: int, epsilon, battery_size: int = 1) -> GadgetInstance:
    """k+2 batteries at 0, e_1, ..., e_{k+1}."""
    eps = _check_range(d, k, epsilon)
    cs = [G.zeros(2 * d)] + [complex_unit(d, j) for j in range(1, k + 2)]
    measures = [MassCloud(battery(c, eps, battery_size)) for c in cs]
    return GadgetInstance(d, k, eps, measures, "too-many-measures", battery_size, [[c] for c in cs])


def make_odd_exploratory_instance(d: int, k: int, epsilon, battery_size: int = 1) -> GadgetInstance:
    """Same layout as the tight gadget, offered for exploring the odd-codimension bound; nothing is claimed."""
    inst = make_tight_depth_instance(d, k, epsilon, battery_size)
    inst.construction = "odd-exploratory"
    return inst


def point_max_min_depth(inst: GadgetInstance) -> tuple:
    """Exhaustive max over candidate points (all battery points) of the min depth over the measures."""
    best, arg = Fraction(-1), None
    for mu in inst.measures:
        for q in mu.points:
            v = min(tukey_depth(nu, q).value for nu in inst.measures)
            if v > best:
                best, arg = v, q
    return best, arg


def best_min_depth_evidence(measures: Sequence[MassCloud], k: int, grid: int = 2, box=Fraction(1)) -> tuple:
    """Exact max-min depth over a dense lattice of charts of the transversal search.

    Every chart parameter ranges over {-box + 2*box*i/grid}; for each chart the
    largest threshold with a common feasible point is found exactly. Returns
    (best value, charts examined).
    """
    d = measures[0].dim // 2
    fam = transversal_family(measures, d, k)
    cands = S.depth_candidates(measures)
    box = Fraction(box)
    coords = [-box + 2 * box * i / grid for i in range(grid + 1)]
    best, count = Fraction(0), 0
    for key in fam.keys:
        for theta in product(coords, repeat=fam.nparams(key)):
            chart = fam.make(key, theta)
            above = [t for t in cands if t > best]
            if not above:
                continue
            t, y = S.max_min_threshold(fam, chart.rows(), above)
            count += 1
            if y is not None:
                V = chart.flat(y)
                best = max(best, min(flat_depth(mu, V).value for mu in measures))
    return best, count


# ---- separating half-spaces ------------------------------------------------------------


def _sqrt_sum_less(terms: Sequence, c: Fraction) -> bool:
    """sum a_i sqrt(x_i) < c for at most two distinct radicands, a_i, x_i >= 0, exactly."""
    grouped: dict = {}
    for a, x in terms:
        grouped[x] = grouped.get(x, 0) + a
    items = [(a, x) for x, a in grouped.items() if a and x]
    if c <= 0:
        return False
    if not items:
        return True
    if len(items) == 1:
        a, x = items[0]
        return a * a * x < c * c
    if len(items) > 2:  # pragma: no cover
        raise NotImplementedError("more than two distinct radicands")
    (a, x), (b, y) = items
    D = c * c - a * a * x - b * b * y
    return D > 0 and 4 * a * a * b * b * x * y < D * D


def simplex_vertices(m: int) -> list:
    es = [G.unit(m, i) for i in range(m)]
    return [G.scale(-1, G.lincomb([1] * m, es, m))] + es


def _facet(m: int, j: int):
    """(n, c, delta) with facet opposite e_j = {n.x = c} and delta = n.e_j - c."""
    V = simplex_vertices(m)
    others = [v for i, v in enumerate(V) if i != j]
    A = [list(v) + [Fraction(-1)] for v in others]
    ns = G.nullspace(A, m + 1)
    sol = ns[0]
    n, c = G.vec(sol[:m]), sol[m]
    delta = G.dot(n, V[j]) - c
    return n, c, delta


def inradius_squared_less(m: int, r) -> bool:
    """Exactly decide r < R(m): R = 1 / sum_j 1/h_j with h_j the height over facet j."""
    r = Fraction(r)
    if r <= 0:
        return True
    terms = []
    for j in range(m + 1):
        n, _, delta = _facet(m, j)
        terms.append((Fraction(1), G.dot(n, n) / (delta * delta)))  # 1/h_j = sqrt(|n|^2 / delta^2)
    return _sqrt_sum_less(terms, 1 / r)


@dataclass(frozen=True)
class ShiftedHalfspace:
    """{x : normal.x >= offset + r |normal|}; r|normal| may be irrational, tests stay exact."""

    normal: tuple
    offset: Fraction
    r: Fraction

    def contains(self, x: Sequence) -> bool:
        s = G.dot(self.normal, x) - self.offset
        return s >= 0 and s * s >= self.r * self.r * G.dot(self.normal, self.normal)

    def misses_open_ball(self, center: Sequence, radius) -> bool:
        """The open ball of the given radius misses the half-space."""
        radius = Fraction(radius)
        nn = G.dot(self.normal, self.normal)
        g = G.dot(self.normal, center) - self.offset  # signed distance * |n| to the unshifted boundary
        # need dist(center, half-space) >= radius, i.e. r|n| - g >= radius |n|
        # both sides compared as  (r - radius)|n| >= g
        lhs = self.r - radius
        if lhs >= 0:
            return g <= 0 or g * g <= lhs * lhs * nn
        return g < 0 and g * g >= lhs * lhs * nn


def separating_halfspace(m: int, r, q: Sequence) -> tuple:
    """Some j and the translated half-space H_{j,r} with e_j, q inside and the r-balls at e_l outside."""
    if m < 2:
        raise InstanceError("need m >= 2")
    r = Fraction(r)
    if r <= 0 or not inradius_squared_less(m, r):
        raise HypothesisViolation(f"r = {r} is not in (0, R({m}))")
    q = G.vec(q)
    V = simplex_vertices(m)
    for j in range(m + 1):
        n, c, delta = _facet(m, j)
        sgn = 1 if delta > 0 else -1
        H = ShiftedHalfspace(G.scale(sgn, n), sgn * c, r)
        if H.contains(q):
            assert H.contains(V[j])
            assert all(H.misses_open_ball(V[l], r) for l in range(m + 1) if l != j)
            return j, H
    raise AssertionError("translated half-spaces failed to cover the query")  # pragma: no cover


# ---- projections transversal to U ---------------------------------------------------------


@dataclass
class ProjectionNormReport:
    passed: bool
    samples: int
    degenerate: int
    failures: list
    max_norm_sq: Fraction

    def __bool__(self):
        return self.passed


def _rational_ball_point(rng: random.Random, n: int, radius: Fraction, den: int = 1 << 10) -> tuple:
    while True:
        v = tuple(Fraction(rng.randint(-den, den), den) for _ in range(n))
        if G.dot(v, v) <= 1:
            return G.scale(radius, v)


def witness_battery(n: int) -> list:
    """Rational vectors of norm 1: the real axes and (3/5, 4/5) combinations of pairs."""
    out = []
    for a in range(n):
        out.append(G.unit(n, a))
        out.append(G.scale(-1, G.unit(n, a)))
    for a, b in combinations(range(n), 2):
        for sa, sb in product((1, -1), repeat=2):
            out.append(G.add(G.scale(Fraction(3 * sa, 5), G.unit(n, a)), G.scale(Fraction(4 * sb, 5), G.unit(n, b))))
    return out


def projection_matrix(d: int, k: int, ys: Sequence) -> list | None:
    """Rows of pi_y: R^{2d} -> U (real coordinates of e_{k+1}..e_d) with kernel the direction of V_y."""
    n = 2 * d
    K = []
    for y in ys[1:]:
        w = G.sub(y, ys[0])
        K += [w, G.apply_j(w)]
    Ub = [G.unit(n, i) for i in range(2 * k, n)]
    B = K + Ub  # columns of the change of basis
    if G.rank(B) < n:
        return None
    Bt = G.transpose(B)  # B^T columns: solve Bt c = v
    inv_cols = [G.solve(Bt, G.unit(n, i)) for i in range(n)]
    # coordinates c = Bt^{-1} v; keep those along U
    return [[inv_cols[i][len(K) + a] for i in range(n)] for a in range(n - 2 * k)]


def projection_norm_check(d: int, k: int, epsilon, samples: int = 100, seed: int = 0) -> ProjectionNormReport:
    if not 0 <= k < d <= 3:
        raise InstanceError(f"need 0 <= k < d <= 3, got k={k}, d={d}")
    eps = Fraction(epsilon)
    rng = random.Random(seed)
    n = 2 * d
    centers = [G.zeros(n)] + [complex_unit(d, j) for j in range(1, k + 1)]
    wit = witness_battery(n)
    failures, degenerate, worst = [], 0, Fraction(0)
    for s in range(samples):
        ys = [G.add(c, _rational_ball_point(rng, n, eps)) if eps else c for c in centers]
        M = projection_matrix(d, k, ys)
        if M is None:
            degenerate += 1
            failures.append((s, "degenerate"))
            continue
        for v in wit:
            pv = G.matvec(M, v)
            nn = G.dot(pv, pv)
            worst = max(worst, nn)
            if nn > 4:
                failures.append((s, "norm"))
                break
    return ProjectionNormReport(not failures, samples, degenerate, failures, worst)


def tight_bound(d: int, k: int) -> Fraction:
    return transversal_bound(d, k)
