"""Index ideals of sphere products and representation spheres, and the key-monomial check.

Circle case: H*(BT^n; Z) = Z[u_1..u_n], deg u_i = 2. Z_2^n case:
H*(BZ_2^n; F_2) = F_2[t_1..t_n], deg t_i = 1. The argument compares the
principal ideal of a representation sphere with the monomial ideal of a
product of spheres: if the designated key monomial appears in the principal
generator with a unit coefficient and lies outside the monomial ideal, no
equivariant map can exist.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import HypothesisViolation, InstanceError
from .poly import Poly, PolyRing, ring

GROUPS = ("circle", "z2")


def group_ring(group: str, n: int) -> PolyRing:
    if group == "circle":
        return ring("u", n, 2)
    if group == "z2":
        return ring("t", n, 1, 2)
    raise InstanceError(f"unknown group {group!r}; expected one of {GROUPS}")


@dataclass(frozen=True)
class IdealSpec:
    ring: PolyRing
    kind: str  # "monomial" or "principal"
    monomials: tuple = ()
    generator: Poly | None = None

    def __post_init__(self):
        if self.kind == "monomial":
            for e in self.monomials:
                if len(e) != self.ring.n or any(a < 0 for a in e):
                    raise InstanceError(f"bad monomial generator {e}")
        elif self.kind == "principal":
            if self.generator is None or not self.generator.is_homogeneous():
                raise InstanceError("principal generator must be a homogeneous polynomial")
        else:
            raise InstanceError(f"unknown ideal kind {self.kind!r}")

    def to_json(self) -> dict:
        out = {"kind": self.kind, "variables": list(self.ring.names), "degrees": list(self.ring.degrees),
               "modulus": self.ring.modulus}
        if self.kind == "monomial":
            out["generators"] = [list(e) for e in self.monomials]
        else:
            out["generator"] = self.generator.to_json()["terms"]
        return out


def index_product_of_spheres(n: int, d: int, group: str) -> IdealSpec:
    """(u_1^d, ..., u_n^d) for the circle, (t_1^{2d}, ..., t_n^{2d}) for Z_2."""
    if n < 1 or d < 1:
        raise InstanceError(f"need n, d >= 1, got n={n}, d={d}")
    R = group_ring(group, n)
    a = d if group == "circle" else 2 * d
    gens = tuple(tuple(a if j == i else 0 for j in range(n)) for i in range(n))
    return IdealSpec(R, "monomial", gens)


@lru_cache(maxsize=None)
def vandermonde(group: str, n: int) -> Poly:
    """prod_{i<j} (u_i - u_j), or prod_{i<j} (t_j^2 + t_i^2) over F_2, expanded factor by factor."""
    R = group_ring(group, n)
    g = R.gens()
    out = R.one()
    for i in range(n):
        for j in range(i + 1, n):
            out = out * (g[i] - g[j] if group == "circle" else g[j] * g[j] + g[i] * g[i])
    return out


def default_exponents(n: int, d: int) -> tuple:
    return tuple(d - i for i in range(1, n + 1))


def index_representation_sphere(n: int, d: int, group: str, exponents: Sequence[int] | None = None) -> IdealSpec:
    """Principal ideal: prod u_i^{d-i} * Vandermonde, or prod t_i^{a_i} * prod (t_j^2 + t_i^2)."""
    R = group_ring(group, n)
    if group == "circle":
        if exponents is None:
            if n > d:
                raise HypothesisViolation(f"circle case needs n <= d, got n={n}, d={d}")
            exponents = default_exponents(n, d)
    elif exponents is None:
        raise InstanceError("the Z_2 case needs an exponent vector")
    a = tuple(int(x) for x in exponents)
    if len(a) != n or any(x < 0 for x in a):
        raise InstanceError(f"need {n} nonnegative exponents, got {a}")
    gen = R.monomial(a) * vandermonde(group, n)
    return IdealSpec(R, "principal", generator=gen)


def monomial_in_monomial_ideal(exps: Sequence[int], ideal: IdealSpec) -> bool:
    if ideal.kind != "monomial":
        raise InstanceError("membership test needs a monomial ideal")
    if len(exps) != ideal.ring.n:
        raise InstanceError(f"monomial has {len(exps)} exponents, ring has {ideal.ring.n} variables")
    return any(all(a >= g for a, g in zip(exps, gen)) for gen in ideal.monomials)


def in_hypothesis(n: int, d: int, group: str, exponents: Sequence[int] | None) -> bool:
    if group == "circle":
        return 1 <= n <= d
    return all(a + 2 * i <= 2 * d - 1 for i, a in enumerate(exponents))


@dataclass
class KeyTermReport:
    group: str
    n: int
    d: int
    exponents: tuple
    key: tuple
    coefficient: int
    unit: bool
    survives: bool
    contradiction_established: bool
    in_hypothesis: bool
    generator_terms: int = 0
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"group": self.group, "n": self.n, "d": self.d, "exponents": list(self.exponents),
                "key_monomial": list(self.key), "coefficient": str(self.coefficient),
                "unit": self.unit, "survives": self.survives,
                "contradiction_established": self.contradiction_established,
                "in_hypothesis": self.in_hypothesis, "generator_terms": self.generator_terms,
                "notes": list(self.notes)}


def key_term_survives(n: int, d: int, group: str, exponents: Sequence[int] | None = None,
                      allow_out_of_hypothesis: bool = False) -> KeyTermReport:
    """Coefficient of the key monomial in the principal generator, and its survival.

    Circle: key (u_1 ... u_n)^{d-1}. Z_2: key t_1^{a_1} t_2^{a_2+2} ... t_n^{a_n+2(n-1)}.
    Parameters outside the hypothesis raise unless allow_out_of_hypothesis is set,
    in which case the report carries in_hypothesis=False.
    """
    if group == "circle" and exponents is None:
        if n > d:
            raise HypothesisViolation(f"circle case needs n <= d, got n={n}, d={d}")
        exponents = default_exponents(n, d)
    if exponents is None:
        raise InstanceError("the Z_2 case needs an exponent vector")
    a = tuple(int(x) for x in exponents)
    ok = in_hypothesis(n, d, group, a)
    if group == "circle" and a != default_exponents(n, d):
        ok = False
    if not ok and not allow_out_of_hypothesis:
        raise HypothesisViolation(f"parameters n={n}, d={d}, exponents={a} violate the hypothesis")
    gen = index_representation_sphere(n, d, group, a).generator
    if group == "circle":
        key = tuple(d - 1 for _ in range(n))
        unit_ok = lambda c: c in (1, -1)
    else:
        key = tuple(x + 2 * i for i, x in enumerate(a))
        unit_ok = lambda c: c % 2 == 1
    coef = gen.coefficient(key)
    unit = unit_ok(coef)
    survives = not monomial_in_monomial_ideal(key, index_product_of_spheres(n, d, group))
    notes = [] if ok else ["out-of-hypothesis parameters"]
    return KeyTermReport(group, n, d, a, key, coef, unit, survives, unit and survives, ok,
                         len(gen.terms), notes)
