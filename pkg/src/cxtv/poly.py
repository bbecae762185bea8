"""Sparse multivariate polynomials over Z or F_p with a graded ring descriptor."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import RingMismatch


@dataclass(frozen=True)
class PolyRing:
    names: tuple
    degrees: tuple
    modulus: int | None = None  # None means Z

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")

    @property
    def n(self) -> int:
        return len(self.names)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.n: 1})

    def gen(self, i: int) -> "Poly":
        e = [0] * self.n
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list["Poly"]:
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, exps: Sequence[int], coef: int = 1) -> "Poly":
        return Poly(self, {tuple(exps): coef})

    def const(self, c: int) -> "Poly":
        return Poly(self, {(0,) * self.n: c})


def ring(prefix: str, n: int, degree: int, modulus: int | None = None) -> PolyRing:
    return PolyRing(tuple(f"{prefix}{i + 1}" for i in range(n)), (degree,) * n, modulus)


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        p = ring.modulus
        clean = {}
        for e, c in terms.items():
            if p is not None:
                c %= p
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    def _check(self, o):
        if not isinstance(o, Poly):
            return self.ring.const(o)
        if o.ring != self.ring:
            raise RingMismatch(f"{self.ring.names} vs {o.ring.names}")
        return o

    def __add__(self, o):
        o = self._check(o)
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._check(o))

    def __rsub__(self, o):
        return self._check(o) - self

    def __mul__(self, o):
        o = self._check(o)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        if isinstance(o, int):
            o = self.ring.const(o)
        return isinstance(o, Poly) and o.ring == self.ring and o.terms == self.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def degrees(self) -> set:
        return {sum(a * d for a, d in zip(e, self.ring.degrees)) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, deg: int) -> "Poly":
        dg = self.ring.degrees
        return Poly(self.ring, {e: c for e, c in self.terms.items()
                                if sum(a * d for a, d in zip(e, dg)) == deg})

    def truncate(self, maxdeg: int) -> "Poly":
        dg = self.ring.degrees
        return Poly(self.ring, {e: c for e, c in self.terms.items()
                                if sum(a * d for a, d in zip(e, dg)) <= maxdeg})

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Ring map sending generator i to images[i]."""
        if len(images) != self.ring.n:
            raise RingMismatch("need one image per generator")
        target = images[0].ring if images else self.ring
        out = target.zero()
        powers: dict = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    if key not in powers:
                        powers[key] = images[i] ** a
                    term = term * powers[key]
            out = out + term
        return out

    def sorted_terms(self) -> list:
        """Canonical order: descending graded degree, then reverse-lexicographic exponent."""
        dg = self.ring.degrees
        return sorted(self.terms.items(), key=lambda t: (-sum(a * d for a, d in zip(t[0], dg)), tuple(-a for a in t[0])))

    def to_json(self) -> dict:
        return {"variables": list(self.ring.names), "degrees": list(self.ring.degrees),
                "modulus": self.ring.modulus,
                "terms": [[list(e), str(c)] for e, c in self.sorted_terms()]}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"{n}^{a}" if a > 1 else n for n, a in zip(self.ring.names, e) if a)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def elementary(r: PolyRing, j: int, vars_: Iterable[int] | None = None) -> Poly:
    """e_j of the chosen generators (all by default)."""
    from itertools import combinations
    idx = list(range(r.n)) if vars_ is None else list(vars_)
    t = {}
    for sub in combinations(idx, j):
        e = [0] * r.n
        for i in sub:
            e[i] = 1
        t[tuple(e)] = 1
    return Poly(r, t)
