"""Tverberg-Vrecica partitions for complex flats (plain, colorful, odd variant).

A certificate is a flat V, a partition of every point set, and for every part
a convex combination of its points that lies on V. Projecting along V's
direction turns "conv(part) meets V" into "q in conv(projected part)" for the
single point q = image of V.

Search runs in two stages. Anchor stage: V is the flat spanned by one point
from each set, and the remaining points of each set are split into parts
whose projected hulls contain q. Chart stage: rational chart samples with an
LP per partition tuple, which can only succeed when the solution set has
interior (oversized or degenerate inputs).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Sequence

import numpy as np

from . import geometry as G
from . import guide
from .charts import GrassmannChart, OddChart, all_index_sets, flat_from_rows
from .errors import InstanceError
from .geometry import ComplexFlat
from .lp import ExactLP, lp_feasible
from .search import SearchConfig, lattice_order

VARIANTS = ("complex", "complex-plus-line")


def required_size(r: int, d: int, k: int, variant: str = "complex") -> int:
    gap = 2 * d - 2 * k + 1 if variant == "complex" else 2 * d - 2 * k + 2
    return (r - 1) * gap + 1


@dataclass
class TvInstance:
    d: int
    k: int
    sets: list  # list of lists of rational vectors in R^{2d}
    r: list
    colors: list | None = None  # per set, a color id per point
    variant: str = "complex"

    def __post_init__(self):
        self.sets = [[G.vec(p) for p in P] for P in self.sets]
        self.r = [int(x) for x in self.r]
        if self.variant not in VARIANTS:
            raise InstanceError(f"unknown variant {self.variant!r}")
        if not 0 <= self.k < self.d:
            raise InstanceError(f"need 0 <= k < d, got k={self.k}, d={self.d}")
        if self.variant == "complex-plus-line" and self.k < 1:
            raise InstanceError("odd variant needs k >= 1")
        if len(self.sets) != self.k + 1 or len(self.r) != self.k + 1:
            raise InstanceError(f"need k+1 = {self.k + 1} point sets and part counts")
        for i, (P, r) in enumerate(zip(self.sets, self.r)):
            if r < 1:
                raise InstanceError(f"set {i}: part count must be positive")
            want = required_size(r, self.d, self.k, self.variant)
            if len(P) != want:
                raise InstanceError(f"set {i}: has {len(P)} points, size formula requires {want}")
            for p in P:
                if len(p) != 2 * self.d:
                    raise InstanceError(f"set {i}: point of dimension {len(p)}, expected {2 * self.d}")
        if self.colors is not None:
            if len(set(self.r)) != 1:
                raise InstanceError("colorful instances need a common part count")
            p = self.r[0]
            for i, (P, col) in enumerate(zip(self.sets, self.colors)):
                if len(col) != len(P):
                    raise InstanceError(f"set {i}: color list length differs from point count")
                for c in set(col):
                    if col.count(c) > p - 1:
                        raise InstanceError(f"set {i}: color class {c} has {col.count(c)} > {p - 1} points")

    @property
    def colorful(self) -> bool:
        return self.colors is not None

    @property
    def proj_dim(self) -> int:
        return 2 * (self.d - self.k) + (1 if self.variant == "complex-plus-line" else 0)

    def in_theorem(self) -> bool:
        """Whether all part counts are powers of one prime (the range where existence is known)."""
        def prime_power(n):
            if n == 1:
                return None
            for p in range(2, n + 1):
                if n % p == 0:
                    m = n
                    while m % p == 0:
                        m //= p
                    return p if m == 1 else -1
            return -1
        ps = {prime_power(r) for r in self.r if r > 1}
        return len(ps) <= 1 and -1 not in ps


@dataclass
class TverbergCert:
    flat: ComplexFlat
    q: tuple  # image of V under the complement rows of its direction
    partitions: list  # per set: list of parts (sorted index lists)
    witnesses: list  # per set, per part: list of (index, weight)
    trace: dict = field(default_factory=dict)


@dataclass
class TvReport:
    """Best-effort outcome: no certificate within the budget."""

    anchors_tried: int
    charts_tried: int
    best_margin: float
    exploratory: bool


# ---- partitions --------------------------------------------------------------


def partitions(n: int, r: int, coloring: Sequence | None = None) -> Iterator[list[list[int]]]:
    """Set partitions of range(n) into r nonempty parts, in restricted-growth-string order."""
    if not 1 <= r <= n:
        return
    a = [0] * n

    def rec(i, m):
        if n - i < r - m:  # not enough elements left to open the missing blocks
            return
        if i == n:
            if m == r:
                parts = [[] for _ in range(r)]
                for j, b in enumerate(a):
                    parts[b].append(j)
                if coloring is None or is_rainbow(parts, coloring):
                    yield parts
            return
        for b in range(min(m + 1, r)):
            a[i] = b
            yield from rec(i + 1, max(m, b + 1))

    a[0] = 0
    yield from rec(1, 1)


def is_rainbow(parts, coloring) -> bool:
    for part in parts:
        cols = [coloring[j] for j in part]
        if len(cols) != len(set(cols)):
            return False
    return True


# ---- LP pieces -------------------------------------------------------------------


def hull_weights(points: Sequence[Sequence], q: Sequence) -> tuple | None:
    """Convex weights lam with sum lam_j p_j = q, or None."""
    n = len(points)
    lp = ExactLP(n, nonneg=[True] * n)
    lp.add_eq([1] * n, 1)
    for c in range(len(q)):
        lp.add_eq([p[c] for p in points], q[c])
    res = lp_feasible(lp)
    return res.point if res.feasible else None


def feasible_given_direction(inst: TvInstance, rows: Sequence[Sequence], parts_tuple: Sequence):
    """One LP: a point q in every projected hull of every part.

    `rows` is any real linear map whose kernel is the flat direction (a chart's
    rows or complement rows). Returns (q, witnesses) or None.
    """
    M = len(rows)
    proj = [[G.matvec(rows, p) for p in P] for P in inst.sets]
    var = []  # (set, part, index)
    for i, parts in enumerate(parts_tuple):
        for j, part in enumerate(parts):
            for idx in part:
                var.append((i, j, idx))
    n = M + len(var)
    lp = ExactLP(n, nonneg=[False] * M + [True] * len(var))
    for i, parts in enumerate(parts_tuple):
        for j, part in enumerate(parts):
            cols = [M + v for v, (a, b, _) in enumerate(var) if a == i and b == j]
            row = [0] * n
            for c in cols:
                row[c] = 1
            lp.add_eq(row, 1)
            for c in range(M):
                row = [0] * n
                row[c] = -1
                for col in cols:
                    row[col] = proj[i][var[col - M][2]][c]
                lp.add_eq(row, 0)
    res = lp_feasible(lp)
    if not res.feasible:
        return None
    q = res.point[:M]
    wit = [[[] for _ in parts] for parts in parts_tuple]
    for v, (i, j, idx) in enumerate(var):
        wit[i][j].append((idx, res.point[M + v]))
    return q, wit


# ---- flats through anchors -----------------------------------------------------------


def anchor_flat(points: Sequence[Sequence], variant: str) -> ComplexFlat | None:
    """Flat of the requested type through k+1 points, or None if they are degenerate."""
    a0 = points[0]
    diffs = [G.sub(p, a0) for p in points[1:]]
    k = len(diffs)
    if variant == "complex":
        try:
            return G.make_complex_flat(a0, diffs)
        except Exception:
            return None
    # complex (k-1)-part from the first k-1 differences, then a real line
    try:
        C = G.make_complex_flat(a0, diffs[:-1]) if k > 1 else G.ComplexFlat(a0, (), "complex", 0)
    except Exception:
        return None
    u = G.orthogonal_project(C.direction, diffs[-1]) if C.direction else diffs[-1]
    if G.is_zero(u) or G.in_span(list(C.direction) + [G.apply_j(u)] if C.direction else [G.apply_j(u)], u):
        return None
    return G.ComplexFlat(a0, tuple(C.direction) + (u,), "complex-plus-line", k)


def _rows_for(V: ComplexFlat) -> list:
    return G.complement_rows(V.direction, V.ambient)


def _complete_set(proj: list, q: tuple, anchor: int, r: int, colors, limit_size: int):
    """Partition a set into r parts: {anchor,...} plus r-1 parts whose hulls contain q.

    Returns (parts, witnesses) or None. Parts are built from minimal
    containing subsets (size <= limit_size), leftovers go to any part that
    stays rainbow.
    """
    n = len(proj)
    rest = [j for j in range(n) if j != anchor]
    if r == 1:
        parts = [list(range(n))]
        if colors is not None and not is_rainbow(parts, colors):
            return None
        return parts, [[(j, Fraction(int(j == anchor))) for j in range(n)]]
    good = []  # (mask, subset, weights)
    cache = {}
    for size in range(1, limit_size + 1):
        for sub in combinations(rest, size):
            mask = 0
            for j in sub:
                mask |= 1 << j
            if any(g & mask == g for g, _, _ in good):
                continue  # not minimal
            if colors is not None and len({colors[j] for j in sub}) < size:
                continue
            w = hull_weights([proj[j] for j in sub], q)
            if w is not None:
                good.append((mask, sub, w))
    good.sort(key=lambda g: g[1])

    def pick(start, chosen, used):
        if len(chosen) == r - 1:
            yield list(chosen)
            return
        for gi in range(start, len(good)):
            m = good[gi][0]
            if m & used:
                continue
            chosen.append(gi)
            yield from pick(gi + 1, chosen, used | m)
            chosen.pop()

    for chosen in pick(0, [], 1 << anchor):
        parts = [[anchor]] + [list(good[g][1]) for g in chosen]
        used = set(j for p in parts for j in p)
        left = [j for j in rest if j not in used]
        placed = _place_leftovers(parts, left, colors)
        if placed is None:
            continue
        wit = [[(anchor, Fraction(1))] + [(j, Fraction(0)) for j in placed[0][1:]]]
        for g, part in zip(chosen, placed[1:]):
            w = dict(zip(good[g][1], good[g][2]))
            wit.append([(j, w.get(j, Fraction(0))) for j in part])
        # canonical order: parts sorted by smallest index
        order = sorted(range(len(placed)), key=lambda i: min(placed[i]))
        return [sorted(placed[i]) for i in order], [sorted(wit[i]) for i in order]
    return None


def _place_leftovers(parts, left, colors):
    parts = [list(p) for p in parts]
    if not left:
        return parts
    j = left[0]
    for p in parts:
        if colors is None or all(colors[x] != colors[j] for x in p):
            p.append(j)
            res = _place_leftovers(parts, left[1:], colors)
            if res is not None:
                return res
            p.pop()
    return None


def _try_flat(inst: TvInstance, V: ComplexFlat, anchors: Sequence[int]):
    rows = _rows_for(V)
    q = G.matvec(rows, V.base)
    partitions_, witnesses = [], []
    for i, (P, r) in enumerate(zip(inst.sets, inst.r)):
        proj = [G.matvec(rows, p) for p in P]
        cols = inst.colors[i] if inst.colors is not None else None
        got = _complete_set(proj, q, anchors[i], r, cols, len(rows) + 1)
        if got is None:
            return None
        partitions_.append(got[0])
        witnesses.append(got[1])
    return q, partitions_, witnesses


# ---- search -----------------------------------------------------------------------------


def search_tv(inst: TvInstance, config: SearchConfig | None = None):
    """Find a TverbergCert; returns a TvReport when nothing is found within budget."""
    cfg = config or SearchConfig(budget=400)
    if inst.d > 3:
        raise InstanceError("d <= 3 supported")
    tried = 0
    for anchors in product(*[range(len(P)) for P in inst.sets]):
        V = anchor_flat([inst.sets[i][a] for i, a in enumerate(anchors)], inst.variant)
        if V is None:
            continue
        tried += 1
        got = _try_flat(inst, V, anchors)
        if got is not None:
            q, parts, wit = got
            return TverbergCert(V, q, parts, wit, {"stage": "anchor", "anchors": list(anchors),
                                                   "seed": cfg.seed})
    return _chart_stage(inst, cfg, tried)


def _part_tuples(inst: TvInstance):
    per_set = []
    for i, (P, r) in enumerate(zip(inst.sets, inst.r)):
        cols = inst.colors[i] if inst.colors is not None else None
        per_set.append(list(partitions(len(P), r, cols)))
    return per_set


def _chart_stage(inst: TvInstance, cfg: SearchConfig, anchors_tried: int):
    import random
    M = inst.proj_dim
    d, k = inst.d, inst.k
    # a part with at most M points has a hull without interior in R^M, so the
    # feasible q-set of the tuple is lower dimensional and a float margin
    # cannot detect it; such tuples are only reachable by the anchor stage
    per_set = [[p for p in ps if all(len(part) > M for part in p)] for ps in _part_tuples(inst)]
    best = float("-inf")
    if any(not ps for ps in per_set):
        return TvReport(anchors_tried, 0, best, not inst.in_theorem())
    if inst.variant == "complex":
        keys = all_index_sets(d, d - k)
        make = lambda key, th: GrassmannChart.from_params(d, key, th)
        npar = 2 * (d - k) * k
    else:
        keys = [(I, s) for I in all_index_sets(d, d - k) for s in range(2 * k)]
        make = lambda key, th: OddChart.from_params(d, key[0], key[1], th)
        npar = 2 * (d - k) * k + 2 * k - 1
    rng = random.Random(cfg.seed)
    fpts = [np.array([[float(x) for x in p] for p in P]) for P in inst.sets]
    charts = 0
    gens = [(key, lattice_order(npar, cfg.box, cfg.grid_step, max(1, cfg.budget // len(keys)), rng))
            for key in keys]
    for key, gen in gens:
        for theta in gen:
            if charts >= cfg.budget:
                break
            charts += 1
            chart = make(key, theta)
            rows = chart.rows()
            R = np.array([[float(x) for x in r] for r in rows])
            proj = [guide.project(F, R) for F in fpts]
            for tup in product(*per_set):
                blocks = []
                for i, parts in enumerate(tup):
                    for part in parts:
                        Y = proj[i][part]
                        w = np.full(len(part), 1.0 / len(part))
                        blocks.append(guide.region_halfspaces(Y, w, 1.0 / len(part)))
                s, _ = guide.joint_margin(blocks, M)
                best = max(best, s)
                if s > cfg.margin_tol:
                    got = feasible_given_direction(inst, rows, tup)
                    if got is None:
                        continue
                    q, wit = got
                    V = chart.flat(q)
                    return _normalize_cert(inst, V, tup, wit, {"stage": "chart", "chart": [str(x) for x in theta],
                                                              "key": str(key), "seed": cfg.seed})
    return TvReport(anchors_tried, charts, best, not inst.in_theorem())


def _normalize_cert(inst, V, tup, wit, trace):
    rows = _rows_for(V)
    q = G.matvec(rows, V.base)
    parts = [[sorted(p) for p in parts] for parts in tup]
    wits = [[sorted(w) for w in ws] for ws in wit]
    return TverbergCert(V, q, parts, wits, trace)


# ---- verification -----------------------------------------------------------------------


def verify_tv(cert: TverbergCert, inst: TvInstance):
    from .transversal import Verdict
    V = cert.flat
    if V.ambient != 2 * inst.d:
        return Verdict(False, "flat lives in the wrong dimension")
    bad = V.kind_violation()
    if bad:
        return Verdict(False, f"kind-violation: {bad}")
    if V.kind != inst.variant or V.k != inst.k:
        return Verdict(False, f"kind: expected {inst.variant}({inst.k}), got {V.kind}({V.k})")
    rows = _rows_for(V)
    if tuple(G.matvec(rows, V.base)) != tuple(cert.q):
        return Verdict(False, "q is not the image of the flat")
    if len(cert.partitions) != len(inst.sets) or len(cert.witnesses) != len(inst.sets):
        return Verdict(False, "one partition per point set is required")
    for i, (P, r, parts, wits) in enumerate(zip(inst.sets, inst.r, cert.partitions, cert.witnesses)):
        flat = sorted(j for p in parts for j in p)
        if flat != list(range(len(P))):
            return Verdict(False, f"set {i}: parts do not partition the index set")
        if len(parts) != r or any(not p for p in parts):
            return Verdict(False, f"set {i}: expected {r} nonempty parts")
        if inst.colors is not None and not is_rainbow(parts, inst.colors[i]):
            return Verdict(False, f"set {i}: a part repeats a color")
        if len(wits) != len(parts):
            return Verdict(False, f"set {i}: witness count differs from part count")
        for j, (part, w) in enumerate(zip(parts, wits)):
            idx = [a for a, _ in w]
            lam = [Fraction(b) for _, b in w]
            if sorted(idx) != sorted(part):
                return Verdict(False, f"set {i} part {j}: witness indices differ from the part")
            if any(l < 0 for l in lam) or sum(lam) != 1:
                return Verdict(False, f"set {i} part {j}: weights are not a convex combination")
            x = G.lincomb(lam, [P[a] for a in idx], 2 * inst.d)
            if not V.contains_point(x):
                return Verdict(False, f"set {i} part {j}: combination does not lie on the flat")
            if tuple(G.matvec(rows, x)) != tuple(cert.q):
                return Verdict(False, f"set {i} part {j}: combination does not reproduce q")
    return Verdict(True)


def halfspace_part_count(cert: TverbergCert, inst: TvInstance, normal, offset) -> list[int]:
    """Per set, the number of parts with a point in the closed halfspace (it must contain V)."""
    out = []
    for P, parts in zip(inst.sets, cert.partitions):
        out.append(sum(1 for part in parts if any(G.dot(P[j], normal) >= offset for j in part)))
    return out
