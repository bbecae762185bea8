"""Integral and mod-p cohomology of complex Grassmannians in the Schur basis.

H*(G_k(C^d)) is Lambda_k / (h_{d-k+1}, ..., h_d): Schur classes s_lam with lam
inside the k x (d-k) rectangle form a basis and every other s_lam vanishes.
Chern classes of the tautological bundle are c_j = e_j = s_(1^j), so products
reduce to Pieri steps with elementary classes followed by rectangle
truncation. Cohomological degrees are doubled: deg c_j = 2j.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable

from .errors import RingMismatch
from .poly import Poly, PolyRing, elementary


# ---- partitions -------------------------------------------------------------------


def normalize(parts: Iterable[int]) -> tuple:
    lam = tuple(int(x) for x in parts if x)
    if any(x < 0 for x in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"not a partition: {lam}")
    return lam


def fits(lam: tuple, k: int, d: int) -> bool:
    return len(lam) <= k and (not lam or lam[0] <= d - k)


def conjugate(lam: tuple) -> tuple:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0]))


def rectangle_partitions(k: int, d: int) -> list:
    """All partitions inside the k x (d-k) rectangle, by size then reverse lex."""
    w = d - k
    out = []

    def rec(prefix, cap, rows):
        out.append(normalize(prefix))
        if rows == 0:
            return
        for x in range(1, cap + 1):
            rec(prefix + [x], x, rows - 1)

    rec([], w, k)
    return sorted(set(out), key=lambda lam: (sum(lam), tuple(-x for x in lam)))


def gaussian_binomial(d: int, k: int) -> list:
    """Coefficients of the q-binomial [d choose k] in q, via the product formula."""

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    def div(a, b):  # exact division by a monic-at-0 polynomial
        a = list(a)
        q = [0] * (len(a) - len(b) + 1)
        for i in range(len(q)):
            q[i] = a[i] // b[0]
            for j, y in enumerate(b):
                a[i + j] -= q[i] * y
        assert not any(a), "inexact q-division"
        return q

    num, den = [1], [1]
    for i in range(k):
        num = mul(num, [1] + [0] * (d - i - 1) + [-1])  # 1 - q^{d-i}
        den = mul(den, [1] + [0] * i + [-1])  # 1 - q^{i+1}
    return div(num, den)


# ---- Schur classes ------------------------------------------------------------------


@dataclass(frozen=True)
class SchurClass:
    k: int
    d: int
    p: int | None = None  # None: integer coefficients
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.k <= self.d:
            raise ValueError(f"need 0 <= k <= d, got k={self.k}, d={self.d}")
        clean = {}
        for lam, c in self.coeffs.items():
            lam = normalize(lam)
            if not fits(lam, self.k, self.d):
                raise ValueError(f"{lam} leaves the {self.k}x{self.d - self.k} rectangle")
            if self.p is not None:
                c %= self.p
            if c:
                clean[lam] = clean.get(lam, 0) + c
        object.__setattr__(self, "coeffs", {l: c for l, c in clean.items() if c})

    @property
    def params(self):
        return (self.k, self.d, self.p)

    @classmethod
    def one(cls, k, d, p=None):
        return cls(k, d, p, {(): 1})

    @classmethod
    def basis(cls, lam, k, d, p=None):
        lam = normalize(lam)
        return cls(k, d, p, {lam: 1} if fits(lam, k, d) else {})

    @classmethod
    def chern(cls, j, k, d, p=None):
        """c_j of the tautological bundle, i.e. s_(1^j)."""
        return cls.basis((1,) * j, k, d, p)

    def _same(self, o):
        if not isinstance(o, SchurClass) or o.params != self.params:
            raise RingMismatch(f"{self.params} vs {getattr(o, 'params', type(o).__name__)}")

    def __add__(self, o):
        self._same(o)
        c = dict(self.coeffs)
        for lam, x in o.coeffs.items():
            c[lam] = c.get(lam, 0) + x
        return SchurClass(self.k, self.d, self.p, c)

    def __neg__(self):
        return SchurClass(self.k, self.d, self.p, {l: -c for l, c in self.coeffs.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c: int):
        return SchurClass(self.k, self.d, self.p, {l: c * x for l, x in self.coeffs.items()})

    def __mul__(self, o):
        if isinstance(o, int):
            return self.scale(o)
        return schur_multiply(self, o)

    def __pow__(self, m: int):
        out = SchurClass.one(self.k, self.d, self.p)
        base = self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> set:
        return {2 * sum(l) for l in self.coeffs}

    def to_json(self) -> dict:
        items = sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))
        return {"k": self.k, "d": self.d, "modulus": self.p,
                "terms": [[list(l), str(c)] for l, c in items]}


@lru_cache(maxsize=None)
def pieri_e(lam: tuple, j: int, k: int, d: int) -> tuple:
    """Partitions mu in the rectangle with mu/lam a vertical strip of size j."""
    if j == 0:
        return (lam,)
    if j > k:
        return ()
    rows = list(lam) + [0] * (k - len(lam))
    out = []
    for S in combinations(range(k), j):
        mu = list(rows)
        for i in S:
            mu[i] += 1
        if all(mu[i] >= mu[i + 1] for i in range(k - 1)) and mu[0] <= d - k:
            out.append(normalize(mu))
    return tuple(out)


@lru_cache(maxsize=None)
def e_expansion(mu: tuple, k: int) -> tuple:
    """s_mu as a polynomial in e_1..e_k (dual Jacobi-Trudi), as ((exps), coef) pairs."""
    mc = conjugate(mu)
    n = len(mc)
    acc: dict = {}
    for sigma in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if sigma[a] > sigma[b])
        exps = [0] * k
        ok = True
        for i in range(n):
            idx = mc[i] - i + sigma[i]
            if idx < 0 or idx > k:
                ok = False
                break
            if idx:
                exps[idx - 1] += 1
        if ok:
            key = tuple(exps)
            acc[key] = acc.get(key, 0) + (-1) ** inv
    return tuple((e, c) for e, c in sorted(acc.items()) if c)


@lru_cache(maxsize=None)
def _apply_e_monomial(lam: tuple, exps: tuple, k: int, d: int) -> tuple:
    cur = {lam: 1}
    for j, a in enumerate(exps, start=1):
        for _ in range(a):
            nxt: dict = {}
            for nu, c in cur.items():
                for mu in pieri_e(nu, j, k, d):
                    nxt[mu] = nxt.get(mu, 0) + c
            cur = nxt
    return tuple(sorted(cur.items()))


def schur_multiply(a: SchurClass, b: SchurClass) -> SchurClass:
    """Product in H*(G_k(C^d)): expand b in elementary classes, then Pieri on a."""
    a._same(b)
    k, d, p = a.params
    out: dict = {}
    for mu, cb in b.coeffs.items():
        for exps, ce in e_expansion(mu, k):
            for lam, ca in a.coeffs.items():
                for nu, cn in _apply_e_monomial(lam, exps, k, d):
                    out[nu] = out.get(nu, 0) + ca * cb * ce * cn
    return SchurClass(k, d, p, out)


# ---- Chern-class presentation ----------------------------------------------------------


def chern_ring(k: int, p: int | None = None) -> PolyRing:
    return PolyRing(tuple(f"c{j}" for j in range(1, k + 1)), tuple(2 * j for j in range(1, k + 1)), p)


def splitting_ring(k: int, p: int | None = None) -> PolyRing:
    return PolyRing(tuple(f"u{j}" for j in range(1, k + 1)), (2,) * k, p)


def presentation_ideal(k: int, d: int, p: int | None = None) -> list:
    """Homogeneous parts of degrees d-k+1..d of (1 + c_1 + ... + c_k)^{-1}."""
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= d, got k={k}, d={d}")
    R = chern_ring(k, p)
    s = R.zero()
    for g in R.gens():
        s = s + g
    inv = R.one()
    term = R.one()
    for _ in range(d):
        term = (term * (-s)).truncate(2 * d)
        inv = inv + term
    return [inv.homogeneous_part(2 * j) for j in range(d - k + 1, d + 1)]


def to_chern(x: SchurClass) -> Poly:
    R = chern_ring(x.k, x.p)
    out = R.zero()
    for lam, c in x.coeffs.items():
        for exps, ce in e_expansion(lam, x.k):
            out = out + R.monomial(exps, c * ce)
    return out


def from_chern(f: Poly, k: int, d: int) -> SchurClass:
    if f.ring.n != k:
        raise RingMismatch(f"polynomial has {f.ring.n} generators, Grassmannian has k={k}")
    p = f.ring.modulus
    out: dict = {}
    for exps, c in f.terms.items():
        for nu, cn in _apply_e_monomial((), tuple(exps), k, d):
            out[nu] = out.get(nu, 0) + c * cn
    return SchurClass(k, d, p, out)


def splitting_pullback(f: Poly) -> Poly:
    """Substitute c_j -> e_j(u_1..u_k)."""
    k = f.ring.n
    U = splitting_ring(k, f.ring.modulus)
    return f.substitute([elementary(U, j) for j in range(1, k + 1)])


# ---- non-vanishing checks -------------------------------------------------------------------


def euler_power_nonvanishing(n: int, d: int, m: int, p: int) -> tuple:
    """Whether c_n^m is nonzero mod p in H*(G_n(C^d)); returns (flag, class)."""
    if not 1 <= n <= d or m < 0:
        raise ValueError(f"need 1 <= n <= d and m >= 0, got n={n}, d={d}, m={m}")
    cls = SchurClass.chern(n, n, d, p) ** m
    return not cls.is_zero(), cls


@dataclass
class ModuleElement:
    """Element of H*(G_n(C^d); F_2)[x] / (projectivization relation): power of x -> class."""

    n: int
    d: int
    parts: dict

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.parts.values())


def _w_complement(n: int, d: int, i: int) -> SchurClass:
    # c(gamma^perp) = c(gamma)^{-1}; its degree-i part is (-1)^i h_i = s_(i) mod 2
    return SchurClass.basis((i,), n, d, 2)


def reduce_x_power(n: int, d: int, e: int) -> dict:
    """x^e in the basis 1, x, ..., x^{N-1} with N = 2(d-n), as power -> class."""
    N = 2 * (d - n)
    zero = SchurClass(n, d, 2, {})
    cur = {e: SchurClass.one(n, d, 2)}
    while True:
        top = max((j for j, c in cur.items() if not c.is_zero()), default=None)
        if top is None or top < N:
            return {j: c for j, c in cur.items() if not c.is_zero()}
        c = cur.pop(top)
        # x^N = sum_{i >= 1} x^{N-2i} w_{2i}(gamma^perp)  (mod 2, odd classes vanish)
        for i in range(1, d - n + 1):
            j = top - 2 * i
            cur[j] = cur.get(j, zero) + c * _w_complement(n, d, i)


def projectivization_nonvanishing(n: int, d: int, m: int) -> bool:
    """Whether (w_{2n} x)^m is nonzero in the projectivized-bundle ring mod 2."""
    if not 1 <= n < d or m < 0:
        raise ValueError(f"need 1 <= n < d and m >= 0, got n={n}, d={d}, m={m}")
    base = SchurClass.chern(n, n, d, 2) ** m
    red = reduce_x_power(n, d, m)
    elem = ModuleElement(n, d, {j: c * base for j, c in red.items()})
    return not elem.is_zero()
