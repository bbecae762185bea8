"""Rational charts on complex Grassmannians and flag manifolds.

Complex coordinate j of C^d occupies real coordinates (2j, 2j+1). A complex
subspace W of dimension m is given by m complex vectors w_j; the map
z -> (<z, w_j>)_j has kernel W^perp and its real rows are w_j, J w_j.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from . import geometry as G
from .errors import InstanceError

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class CQ:
    """Complex number with rational real and imaginary parts."""

    re: Fraction = ZERO
    im: Fraction = ZERO

    def __add__(self, o):
        return CQ(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return CQ(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        return CQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __neg__(self):
        return CQ(-self.re, -self.im)

    def conj(self):
        return CQ(self.re, -self.im)

    def norm2(self):
        return self.re * self.re + self.im * self.im

    def __truediv__(self, o):
        n = o.norm2()
        p = self * o.conj()
        return CQ(p.re / n, p.im / n)

    def __bool__(self):
        return bool(self.re) or bool(self.im)


def realify(zs: Sequence[CQ]) -> tuple:
    out = []
    for z in zs:
        out.append(Fraction(z.re))
        out.append(Fraction(z.im))
    return tuple(out)


def complexify(x: Sequence) -> list[CQ]:
    return [CQ(Fraction(x[2 * j]), Fraction(x[2 * j + 1])) for j in range(len(x) // 2)]


def complex_rows(ws: Sequence[Sequence[CQ]]) -> list[tuple]:
    """Real rows (w_1, J w_1, w_2, J w_2, ...) of the map z -> (<z, w_j>)."""
    rows = []
    for w in ws:
        r = realify(w)
        rows.append(r)
        rows.append(G.apply_j(r))
    return rows


def paired_basis(space: Sequence[Sequence]) -> list[tuple]:
    """Basis of a J-invariant space written as (b_1, J b_1, b_2, J b_2, ...)."""
    out: list[tuple] = []
    for b in space:
        if len(out) == len(space):
            break
        if out and G.in_span(out, b):
            continue
        out.extend([tuple(b), G.apply_j(b)])
    return out


def flat_from_rows(rows: Sequence[Sequence], y: Sequence, kind: str, k: int) -> G.ComplexFlat:
    """{x : rows . x = y}, with a paired direction basis for complex kinds."""
    n = len(rows[0])
    V = G.flat_from_equations(rows, y, kind, k)
    if kind == "complex":
        return G.ComplexFlat(V.base, tuple(paired_basis(V.direction)), kind, k)
    inv = G.maximal_j_invariant(V.direction)
    pb = paired_basis(inv)
    extra = next(b for b in V.direction if not G.in_span(pb, b)) if len(pb) < len(V.direction) else None
    direction = list(pb)
    if extra is not None:
        # make the extra line orthogonal to the invariant part
        direction.append(G.orthogonal_project(pb, extra) if pb else extra)
    assert len(direction) == len(V.direction) == n - len(rows)
    return G.ComplexFlat(V.base, tuple(direction), kind, k)


# ---- Grassmann charts ------------------------------------------------------


@dataclass(frozen=True)
class GrassmannChart:
    """W = span_C{w_j}, w_j = e_{I_j} + sum_l Z[j][l] e_{C_l} (C = complement of I)."""

    d: int
    I: tuple
    Z: tuple  # (d-k) x k of CQ

    @property
    def k(self) -> int:
        return self.d - len(self.I)

    @property
    def C(self) -> tuple:
        return tuple(j for j in range(self.d) if j not in self.I)

    @property
    def nparams(self) -> int:
        return 2 * len(self.I) * self.k

    @classmethod
    def from_params(cls, d: int, I: Sequence[int], theta: Sequence) -> "GrassmannChart":
        I = tuple(I)
        k = d - len(I)
        theta = [Fraction(x) for x in theta]
        if len(theta) != 2 * len(I) * k:
            raise InstanceError("wrong number of chart parameters")
        Z = tuple(tuple(CQ(theta[2 * (j * k + l)], theta[2 * (j * k + l) + 1]) for l in range(k))
                  for j in range(len(I)))
        return cls(d, I, Z)

    def params(self) -> tuple:
        out = []
        for row in self.Z:
            for z in row:
                out.extend([z.re, z.im])
        return tuple(out)

    def vectors(self) -> list[list[CQ]]:
        ws = []
        C = self.C
        for j, i in enumerate(self.I):
            w = [CQ() for _ in range(self.d)]
            w[i] = CQ(ONE)
            for l, c in enumerate(C):
                w[c] = self.Z[j][l]
            ws.append(w)
        return ws

    def rows(self) -> list[tuple]:
        return complex_rows(self.vectors())

    def flat(self, y: Sequence) -> G.ComplexFlat:
        return flat_from_rows(self.rows(), y, "complex", self.k)


def all_index_sets(d: int, m: int) -> list[tuple]:
    return list(combinations(range(d), m))


# ---- odd charts ------------------------------------------------------------


@dataclass(frozen=True)
class OddChart:
    """U = W + R*ell, with W a Grassmann chart and ell a real line in W^perp.

    ell = sum_l c_l v_l over the complex basis v_l of W^perp, where c in C^k
    is written as 2k real numbers with entry `s` pinned to 1.
    """

    grass: GrassmannChart
    s: int
    c: tuple  # 2k - 1 free reals

    @property
    def d(self):
        return self.grass.d

    @property
    def k(self):
        return self.grass.k

    @property
    def nparams(self):
        return self.grass.nparams + 2 * self.k - 1

    @classmethod
    def from_params(cls, d, I, s, theta):
        g = GrassmannChart.from_params(d, I, theta[: 2 * len(I) * (d - len(I))])
        return cls(g, s, tuple(Fraction(x) for x in theta[g.nparams:]))

    def params(self):
        return self.grass.params() + self.c

    def complement_basis(self) -> list[list[CQ]]:
        """Complex basis v_l = e_{C_l} - sum_j conj(Z[j][l]) e_{I_j} of W^perp."""
        g = self.grass
        out = []
        for l, c in enumerate(g.C):
            v = [CQ() for _ in range(g.d)]
            v[c] = CQ(ONE)
            for j, i in enumerate(g.I):
                v[i] = -g.Z[j][l].conj()
            out.append(v)
        return out

    def ell(self) -> tuple:
        coef = list(self.c[: self.s]) + [ONE] + list(self.c[self.s:])
        cs = [CQ(coef[2 * l], coef[2 * l + 1]) for l in range(self.k)]
        vs = self.complement_basis()
        z = [CQ() for _ in range(self.d)]
        for cl, v in zip(cs, vs):
            for a in range(self.d):
                z[a] = z[a] + cl * v[a]
        return realify(z)

    def rows(self) -> list[tuple]:
        return self.grass.rows() + [self.ell()]

    def flat(self, y: Sequence) -> G.ComplexFlat:
        return flat_from_rows(self.rows(), y, "complex-plus-line", self.k)


# ---- flag charts -----------------------------------------------------------


@dataclass(frozen=True)
class FlagChart:
    """Frame f_1..f_{d-k}; f_j = e_{sigma_j} + sum_{l not in sigma_1..j} Z_j[l] e_l.

    Level i (k <= i <= d-1) uses the first d-i frame vectors, so that
    V_i = {z : <z, f_j> = y_j, j < d-i} and V_k ⊆ ... ⊆ V_{d-1}.
    """

    d: int
    k: int
    sigma: tuple
    Z: tuple  # Z[j] = tuple of CQ over free positions of f_j in increasing order

    def free_positions(self, j: int) -> list[int]:
        used = set(self.sigma[: j + 1])
        return [l for l in range(self.d) if l not in used]

    @property
    def nparams(self) -> int:
        return sum(2 * len(self.free_positions(j)) for j in range(self.d - self.k))

    @classmethod
    def from_params(cls, d, k, sigma, theta):
        theta = [Fraction(x) for x in theta]
        Z = []
        pos = 0
        tmp = cls(d, k, tuple(sigma), ())
        for j in range(d - k):
            n = len(tmp.free_positions(j))
            Z.append(tuple(CQ(theta[pos + 2 * a], theta[pos + 2 * a + 1]) for a in range(n)))
            pos += 2 * n
        if pos != len(theta):
            raise InstanceError("wrong number of flag chart parameters")
        return cls(d, k, tuple(sigma), tuple(Z))

    def params(self):
        out = []
        for row in self.Z:
            for z in row:
                out.extend([z.re, z.im])
        return tuple(out)

    def vectors(self) -> list[list[CQ]]:
        out = []
        for j in range(self.d - self.k):
            f = [CQ() for _ in range(self.d)]
            f[self.sigma[j]] = CQ(ONE)
            for z, l in zip(self.Z[j], self.free_positions(j)):
                f[l] = z
            out.append(f)
        return out

    def rows(self) -> list[tuple]:
        return complex_rows(self.vectors())

    def level_rows(self, i: int) -> int:
        """Number of leading real rows used by level i."""
        return 2 * (self.d - i)

    def flats(self, y: Sequence) -> list[G.ComplexFlat]:
        rows = self.rows()
        out = []
        for i in range(self.k, self.d):
            r = self.level_rows(i)
            out.append(flat_from_rows(rows[:r], y[:r], "complex", i))
        return out


def all_sigmas(d: int, m: int) -> list[tuple]:
    return list(permutations(range(d), m))
