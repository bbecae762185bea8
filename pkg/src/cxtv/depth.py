"""Exact halfspace (Tukey) depth, depth of flats, and centerpoint regions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from . import geometry as G
from .errors import NoBarycenterError, UnsupportedDimensionError
from .geometry import ComplexFlat, MassCloud
from .lp import halfspace_feasible

ZERO = Fraction(0)
ONE = Fraction(1)
MAX_DEPTH_DIM = 6
MAX_REGION_DIM = 4


@dataclass(frozen=True)
class DepthValue:
    value: Fraction
    witness_normal: tuple
    witness_offset: Fraction


@dataclass(frozen=True)
class DepthRegion:
    threshold: Fraction
    halfspaces: tuple  # ((normal, offset), ...) meaning <x, normal> >= offset
    vertices: tuple
    dim: int

    @property
    def empty(self) -> bool:
        return not self.vertices

    def contains(self, x: Sequence) -> bool:
        return all(G.dot(n, x) >= c for n, c in self.halfspaces)


# ---- depth of a point ---------------------------------------------------


def _int_dir(v: Sequence) -> tuple[int, ...]:
    return G.primitive(v) if not G.is_zero(v) else tuple(0 for _ in v)


def _pivot_cols(vecs: list[tuple[int, ...]], n: int) -> list[int]:
    _, piv = G.rref(vecs, n)
    return piv


def _cone_depth(vecs: list[tuple[int, ...]], weights: list[Fraction], n: int):
    """min over u != 0 of the weight of {i : <a_i, u> >= 0}; returns (value, u).

    Recursion on rank: an optimal u can be taken with a maximal set Z of
    vectors on its boundary; then u = u0 + eps*v where u0 is normal to an
    independent (r-1)-subset and v solves the same problem on Z.
    """
    w0 = ZERO
    nz, nw = [], []
    for a, w in zip(vecs, weights):
        if any(a):
            nz.append(a)
            nw.append(w)
        else:
            w0 += w
    if not nz:
        return w0, tuple(1 if i == 0 else 0 for i in range(n))
    piv = _pivot_cols(nz, n)
    r = len(piv)
    red = [tuple(a[p] for p in piv) for a in nz]
    if r == 1:
        pos = sum((w for c, w in zip(red, nw) if c[0] > 0), ZERO)
        neg = sum((w for c, w in zip(red, nw) if c[0] < 0), ZERO)
        uc = (1,) if pos <= neg else (-1,)
        best, u_red = w0 + min(pos, neg), uc
    else:
        best = None
        u_red = None
        seen = set()
        for sub in combinations(range(len(red)), r - 1):
            nrm = G.cross_int([red[i] for i in sub])
            if not any(nrm):
                continue
            key = _int_dir(nrm)
            if key in seen:
                continue
            seen.add(key)
            for sgn in (1, -1):
                u0 = tuple(sgn * x for x in key)
                dots = [sum(x * y for x, y in zip(c, u0)) for c in red]
                pw = ZERO
                zi = []
                for i, dv in enumerate(dots):
                    if dv > 0:
                        pw += nw[i]
                    elif dv == 0:
                        zi.append(i)
                if best is not None and w0 + pw >= best:
                    continue
                zval, v = _cone_depth([red[i] for i in zi], [nw[i] for i in zi], r)
                val = w0 + pw + zval
                if best is None or val < best:
                    # perturb u0 toward v keeping signs of nonzero dots
                    eps = None
                    for i, dv in enumerate(dots):
                        if dv == 0:
                            continue
                        cv = sum(x * y for x, y in zip(red[i], v))
                        if cv != 0 and (cv > 0) != (dv > 0):
                            ratio = Fraction(abs(dv), abs(cv))
                            if eps is None or ratio < eps:
                                eps = ratio
                    eps = ONE if eps is None else eps / 2
                    u = tuple(Fraction(a) + eps * b for a, b in zip(u0, v))
                    best, u_red = val, G.primitive(u)
            if best == w0:
                break
    u = [0] * n
    for p, x in zip(piv, u_red):
        u[p] = x
    return best, tuple(u)


def tukey_depth(cloud: MassCloud, q: Sequence) -> DepthValue:
    """Minimum weight of a closed halfspace with q on its boundary."""
    q = G.vec(q)
    m = len(q)
    if m != cloud.dim:
        raise ValueError(f"query in R^{m}, cloud in R^{cloud.dim}")
    if m > MAX_DEPTH_DIM:
        raise UnsupportedDimensionError(f"depth supported up to dimension {MAX_DEPTH_DIM}, got {m}")
    if m == 0:
        return DepthValue(ONE, (), ZERO)
    vecs = [_int_dir(G.sub(p, q)) for p in cloud.points]
    value, u = _cone_depth(vecs, list(cloud.weights), m)
    normal = tuple(Fraction(x) for x in u)
    offset = G.dot(normal, q)
    recount = cloud.weight_of(normal, offset)
    if recount != value:  # pragma: no cover - internal consistency
        raise AssertionError(f"witness recount {recount} != {value}")
    return DepthValue(value, normal, offset)


def flat_depth(cloud: MassCloud, V: ComplexFlat) -> DepthValue:
    """Minimum weight of a closed halfspace containing the flat V."""
    n = cloud.dim
    if V.ambient != n:
        raise ValueError(f"flat in R^{V.ambient}, cloud in R^{n}")
    rows = G.complement_rows(V.direction, n)
    if not rows:
        return DepthValue(ONE, G.zeros(n), ZERO)
    proj = cloud.map(rows)
    dv = tukey_depth(proj, G.matvec(rows, V.base))
    normal = G.lincomb(dv.witness_normal, rows, n)
    offset = G.dot(normal, V.base)
    recount = cloud.weight_of(normal, offset)
    if recount != dv.value:  # pragma: no cover
        raise AssertionError("flat witness recount mismatch")
    return DepthValue(dv.value, normal, offset)


# ---- centerpoint regions ------------------------------------------------


def affine_frame(points: Sequence[Sequence]):
    """(origin, basis) of the affine hull of points, basis from RREF of differences."""
    p0 = points[0]
    diffs = [G.sub(p, p0) for p in points[1:]]
    if not diffs:
        return p0, []
    R, _ = G.rref(diffs, len(p0))
    return p0, [tuple(r) for r in R]


def _chart_coords(basis, piv_cols, x_rel):
    # basis is in RREF, so the coordinates are read off at pivot columns
    return tuple(x_rel[c] for c in piv_cols)


def region_halfspaces(points: Sequence[Sequence], weights: Sequence, t: Fraction) -> list:
    """Halfspaces (normal, offset) cutting out {depth >= t} for a full-dimensional cloud.

    {depth >= t} is the intersection of all closed halfspaces of weight
    > 1 - t, and for a spanning cloud it suffices to use those bounded by
    hyperplanes through m affinely independent cloud points (see
    docs/region_lemma.md).
    """
    m = len(points[0])
    den = G.common_denominator(points)
    ipts = [tuple(int(x * den) for x in p) for p in points]
    out = {}
    thr = 1 - t
    for sub in combinations(range(len(ipts)), m):
        base = ipts[sub[0]]
        diffs = [tuple(a - b for a, b in zip(ipts[i], base)) for i in sub[1:]]
        nrm = G.cross_int(diffs) if m > 1 else (1,)
        if not any(nrm):
            continue
        g = 0
        for x in nrm:
            g = gcd(g, x)
        nrm = tuple(x // g for x in nrm)
        c = sum(a * b for a, b in zip(nrm, base))
        vals = [sum(a * b for a, b in zip(nrm, p)) for p in ipts]
        wge = sum((w for v, w in zip(vals, weights) if v >= c), ZERO)
        wle = sum((w for v, w in zip(vals, weights) if v <= c), ZERO)
        if wge > thr:
            out[(nrm, c)] = None
        if wle > thr:
            out[(tuple(-x for x in nrm), -c)] = None
    res = []
    for nrm, c in out:
        res.append((tuple(Fraction(x) for x in nrm), Fraction(c, den)))
    res.sort()
    return res


def enumerate_vertices(halfspaces: Sequence, box_lo: Sequence, box_hi: Sequence) -> list[tuple]:
    """Vertices of box ∩ {<n, x> >= c}, by double-description clipping.

    Vertices carry exact tight sets; two vertices are adjacent iff no third
    vertex is tight on every constraint they share.
    """
    m = len(box_lo)
    cons = []
    for i in range(m):
        cons.append((G.unit(m, i), Fraction(box_lo[i])))
        cons.append((G.scale(-1, G.unit(m, i)), -Fraction(box_hi[i])))
    verts = []
    tights = []
    for bits in range(1 << m):
        v = tuple(Fraction(box_hi[i]) if bits >> i & 1 else Fraction(box_lo[i]) for i in range(m))
        verts.append(v)
        tights.append(frozenset(2 * i + (bits >> i & 1) for i in range(m)))
    for nrm, c in halfspaces:
        if not verts:
            break
        idx = len(cons)
        cons.append((nrm, c))
        s = [G.dot(nrm, v) - c for v in verts]
        if all(x > 0 for x in s):
            continue
        new_v, new_t = [], []
        pos = [i for i, x in enumerate(s) if x > 0]
        neg = [i for i, x in enumerate(s) if x < 0]
        for i, x in enumerate(s):
            if x > 0:
                new_v.append(verts[i])
                new_t.append(tights[i])
            elif x == 0:
                new_v.append(verts[i])
                new_t.append(tights[i] | {idx})
        for a in pos:
            Ta = tights[a]
            for b in neg:
                common = Ta & tights[b]
                if len(common) < m - 1:
                    continue
                if any(j != a and j != b and common <= tights[j] for j in range(len(verts))):
                    continue
                lam = s[a] / (s[a] - s[b])
                va, vb = verts[a], verts[b]
                new_v.append(tuple(x + lam * (y - x) for x, y in zip(va, vb)))
                new_t.append(common | {idx})
        verts, tights = new_v, new_t
    return sorted(set(verts))


def _hull_frame(cloud: MassCloud):
    m = cloud.dim
    pts = cloud.points
    p0, basis = affine_frame(pts)
    _, piv = G.rref(basis, m) if basis else ([], [])
    local = [_chart_coords(basis, piv, G.sub(p, p0)) for p in pts]
    eqs = []
    for nrm in G.nullspace(basis, m) if basis else [G.unit(m, i) for i in range(m)]:
        c = G.dot(nrm, p0)
        eqs.append((nrm, c))
        eqs.append((G.scale(-1, nrm), -c))
    return p0, basis, piv, local, eqs


def _lift(hs_local, piv, p0, m):
    # a local normal n acts on x via n . coords(x - p0)
    out = []
    for nrm, c in hs_local:
        full = [ZERO] * m
        for a, col in zip(nrm, piv):
            full[col] = a
        full = tuple(full)
        out.append((full, c + G.dot(full, p0)))
    return out


def depth_halfspaces(cloud: MassCloud, t) -> list:
    """Halfspace description of {q : depth(q) >= t} in the ambient space."""
    t = Fraction(t)
    p0, basis, piv, local, eqs = _hull_frame(cloud)
    if not basis:
        return eqs
    return eqs + _lift(region_halfspaces(local, cloud.weights, t), piv, p0, cloud.dim)


def centerpoint_region(cloud: MassCloud, t) -> DepthRegion:
    """The polytope {q : tukey_depth(q) >= t}."""
    t = Fraction(t)
    if not 0 < t <= 1:
        raise ValueError("threshold must lie in (0, 1]")
    m = cloud.dim
    if m > MAX_REGION_DIM:
        raise UnsupportedDimensionError(f"regions supported up to dimension {MAX_REGION_DIM}")
    p0, basis, piv, local, eqs = _hull_frame(cloud)
    j = len(basis)
    if j == 0:
        return DepthRegion(t, tuple(eqs), (p0,), m)
    hs_local = region_halfspaces(local, cloud.weights, t)
    lo = [min(p[i] for p in local) for i in range(j)]
    hi = [max(p[i] for p in local) for i in range(j)]
    vl = enumerate_vertices(hs_local, lo, hi)
    verts = sorted(G.add(p0, G.lincomb(y, basis, m)) for y in vl)
    hs = _lift(hs_local, piv, p0, m)
    return DepthRegion(t, tuple(eqs) + tuple(hs), tuple(verts), m)


def region_is_empty(region: DepthRegion) -> bool:
    """LP probe, independent of the vertex enumeration."""
    return not halfspace_feasible(region.halfspaces, region.dim)


def centerpoint_barycenter(cloud: MassCloud, t) -> tuple:
    reg = centerpoint_region(cloud, t)
    if reg.empty:
        raise NoBarycenterError(f"depth region at t={t} is empty")
    n = len(reg.vertices)
    return tuple(sum((v[i] for v in reg.vertices), ZERO) / n for i in range(reg.dim))
