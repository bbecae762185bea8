"""Seeded instance generators (generic, clustered, gadget)."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import geometry as G
from . import gadgets
from . import io
from .errors import InstanceError
from .geometry import MassCloud
from .tverberg import TvInstance, required_size

DEN = 1 << 16
MAX_SUBSETS = 20000
GENERICITY = ("generic", "clustered", "gadget")


def _int_point(rng: random.Random, n: int, spread: int = DEN) -> tuple:
    return tuple(rng.randint(-spread, spread) for _ in range(n))


def affinely_generic(points: Sequence[Sequence[int]], rng: random.Random | None = None) -> bool:
    """No m+1 of the points (in R^m) are affinely dependent; sampled when there are too many subsets."""
    pts = [tuple(p) for p in points]
    if len(set(pts)) < len(pts):
        return False
    m = len(pts[0])
    s = min(m + 1, len(pts))
    from math import comb
    if comb(len(pts), s) <= MAX_SUBSETS:
        subsets = combinations(range(len(pts)), s)
    else:
        rng = rng or random.Random(0)
        subsets = (tuple(rng.sample(range(len(pts)), s)) for _ in range(MAX_SUBSETS))
    for S in subsets:
        p0 = pts[S[0]]
        rows = [[a - b for a, b in zip(pts[i], p0)] for i in S[1:]]
        if s == m + 1:
            if G.det_int(rows) == 0:
                return False
        elif G.rank(rows) < s - 1:
            return False
    return True


def _sample_sets(rng: random.Random, sizes: Sequence[int], n: int, genericity: str) -> list:
    for _ in range(100):
        if genericity == "generic":
            sets = [[_int_point(rng, n) for _ in range(s)] for s in sizes]
        else:  # clustered: a few tight clusters per set
            sets = []
            for s in sizes:
                centers = [_int_point(rng, n) for _ in range(max(1, s // 4))]
                sets.append([tuple(c + x for c, x in zip(rng.choice(centers), _int_point(rng, n, DEN // 64)))
                             for _ in range(s)])
        if affinely_generic([p for P in sets for p in P], rng):
            return [[tuple(Fraction(x, DEN) for x in p) for p in P] for P in sets]
    raise InstanceError("could not sample a generic configuration")  # pragma: no cover


def colorful_colors(n: int, p: int) -> list:
    """Colour ids 0, 0, 1, 1, ...: classes of size p-1 (the last may be smaller)."""
    return [i // (p - 1) for i in range(n)]


def generate_instance(kind: str, d: int, k: int, sizes: Sequence[int] | None = None, seed: int = 0,
                      genericity: str = "generic", r: Sequence[int] | None = None, variant: str = "complex",
                      colorful: bool = False, epsilon=Fraction(1, 16), battery: int = 1,
                      construction: str = "tight-depth") -> dict:
    """An InstanceFile dict; deterministic for a fixed seed."""
    if genericity not in GENERICITY:
        raise InstanceError(f"unknown genericity {genericity!r}")
    if not 0 <= k < d:
        raise InstanceError(f"need 0 <= k < d, got k={k}, d={d}")
    prov = {"seed": seed, "genericity": genericity, "generator": "cxtv.generate"}
    if genericity == "gadget" or kind == "gadget":
        make = {"tight-depth": gadgets.make_tight_depth_instance,
                "too-many-measures": gadgets.make_too_many_measures_instance,
                "odd-exploratory": gadgets.make_odd_exploratory_instance}.get(construction)
        if make is None:
            raise InstanceError(f"unknown gadget construction {construction!r}")
        g = make(d, k, Fraction(epsilon), battery)
        payload = io.measures_payload(d, k, g.measures)
        payload.update({"construction": g.construction, "epsilon": io.q(g.epsilon), "battery": battery})
        prov.update({"construction": construction})
        return io.instance_file("gadget", payload, prov)
    rng = random.Random(seed)
    n = 2 * d
    if kind == "measures":
        if not sizes:
            raise InstanceError("measures need a list of cloud sizes")
        sets = _sample_sets(rng, sizes, n, genericity)
        return io.instance_file("measures", io.measures_payload(d, k, [MassCloud(tuple(P)) for P in sets]), prov)
    if kind == "tverberg":
        if r is None:
            raise InstanceError("tverberg instances need part counts r")
        want = [required_size(ri, d, k, variant) for ri in r]
        if sizes is not None and list(sizes) != want:
            raise InstanceError(f"sizes {list(sizes)} violate the size formula, which requires {want}")
        sets = _sample_sets(rng, want, n, genericity)
        colors = [colorful_colors(len(P), r[0]) for P in sets] if colorful else None
        inst = TvInstance(d, k, sets, list(r), colors, variant)
        return io.instance_file("tverberg", io.tv_to_json(inst), prov)
    raise InstanceError(f"unknown instance kind {kind!r}")
