"""Independent brute-force oracles used only by the tests."""
from fractions import Fraction
from itertools import product
from math import gcd


def perp(v):
    return (-v[1], v[0])


def _prim(u):
    den = 1
    for x in u:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    a, b = int(u[0] * den), int(u[1] * den)
    g = gcd(a, b)
    return (a // g, b // g)


def planar_depth(points, weights, q):
    """Closed-halfplane depth of q in R^2.

    Every open cell of the line arrangement through q is hit by some
    candidate: critical directions (normals and directions of p - q, axes)
    plus sums of pairs, which land strictly between neighbours.
    """
    a = [(p[0] - q[0], p[1] - q[1]) for p in points]
    cands = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    for v in a:
        if v != (0, 0):
            for u in (v, perp(v)):
                cands.append(u)
                cands.append((-u[0], -u[1]))
    cands = sorted({_prim(u) for u in cands})
    ext = list(cands)
    for u, v in product(cands, repeat=2):
        s = (u[0] + v[0], u[1] + v[1])
        if s != (0, 0):
            ext.append(s)
    best = Fraction(1)
    for u in ext:
        w = sum((wt for v, wt in zip(a, weights) if v[0] * u[0] + v[1] * u[1] >= 0), Fraction(0))
        best = min(best, w)
    return best


def grid_depth_1d(points, weights, q):
    left = sum((w for p, w in zip(points, weights) if p[0] <= q[0]), Fraction(0))
    right = sum((w for p, w in zip(points, weights) if p[0] >= q[0]), Fraction(0))
    return min(left, right)


def stirling2(n, r):
    if n == r:
        return 1
    if r == 0 or r > n:
        return 0
    return r * stirling2(n - 1, r) + stirling2(n - 1, r - 1)


def q_binomial(d, k):
    """Coefficients of [d choose k]_q by the q-Pascal recurrence."""
    if k < 0 or k > d:
        return [0]
    if k == 0 or k == d:
        return [1]
    a = q_binomial(d - 1, k - 1)
    b = q_binomial(d - 1, k)
    out = [0] * max(len(a), len(b) + k)
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i + k] += x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


class QuotientRing:
    """Z[c_1..c_k] / (degree d-k+1..d parts of (1 + c_1 + ... + c_k)^{-1}), via sympy Groebner bases.

    The relations are built here from scratch with sympy's series arithmetic,
    independently of the package's polynomial code.
    """

    def __init__(self, k, d):
        import sympy as sp
        self.sp = sp
        self.c = sp.symbols(f"c1:{k + 1}")
        t = sp.Symbol("t")
        total = 1 + sum(ci * t ** (i + 1) for i, ci in enumerate(self.c))
        inv = sp.expand(sp.series(1 / total, t, 0, d + 1).removeO())
        rels = [sp.expand(inv.coeff(t, j)) for j in range(d - k + 1, d + 1)]
        self.gb = sp.groebner(rels, *self.c, order="grevlex", domain="QQ") if any(rels) else None

    def from_terms(self, terms):
        expr = 0
        for exps, coef in terms:
            m = int(coef)
            for ci, a in zip(self.c, exps):
                m *= ci ** a
            expr += m
        return self.sp.expand(expr)

    def normal_form(self, expr):
        if self.gb is None:
            return self.sp.expand(expr)
        return self.gb.reduce(self.sp.expand(expr))[1]
