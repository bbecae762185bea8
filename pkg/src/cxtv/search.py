"""Chart search shared by the transversal and flag searches.

A *family* fixes which real rows a chart produces and which depth
constraints each measure must meet after projection. For a chart we look for
y with  y[:r_l] in D(pi_l mu_l, t_l)  for every level l, where pi_l is the
map given by the first r_l rows. The float layer ranks charts by the
Chebyshev margin of that joint system; the exact layer builds the regions in
Q, finds a rational y, and hands the chart and y back to the caller.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

import numpy as np

from . import geometry as G
from . import guide
from .depth import depth_halfspaces
from .geometry import MassCloud
from .lp import halfspace_feasible

BUDGET_ENV = "CXTV_BUDGET"


def default_budget() -> int:
    return int(os.environ.get(BUDGET_ENV, 100_000))


@dataclass
class SearchConfig:
    budget: int = field(default_factory=default_budget)  # chart samples
    grid_step: Fraction = Fraction(1, 8)
    restarts: int = 16
    seed: int = 0
    workers: int = 1
    box: Fraction = Fraction(1)  # chart parameters live in [-box, box]
    refine_depth: int = 10  # pattern search halves the step this many times
    margin_tol: float = 1e-9
    near_tol: float = 1e-7  # charts with margin above -near_tol still get an exact attempt


@dataclass(frozen=True)
class Level:
    measure: int
    nrows: int
    t: Fraction


@dataclass
class Family:
    measures: list
    levels: list
    nrows: int
    keys: list
    make: Callable  # (key, theta) -> chart with .rows()
    nparams: Callable  # key -> int

    def __post_init__(self):
        self._fpts = [np.array([[float(x) for x in p] for p in m.points]) for m in self.measures]
        self._fw = [np.array([float(w) for w in m.weights]) for m in self.measures]


@dataclass
class Found:
    key: object
    theta: tuple
    chart: object
    y: tuple
    evals: int


@dataclass
class Attempt:
    """Outcome of a search: `found` on success, else the best chart seen."""

    found: Found | None
    evals: int
    best_key: object = None
    best_theta: tuple = ()
    best_margin: float = float("-inf")


def float_margin(fam: Family, rows: np.ndarray, t_override: float | None = None):
    blocks = []
    for lv in fam.levels:
        R = rows[: lv.nrows]
        Y = guide.project(fam._fpts[lv.measure], R)
        t = float(lv.t) if t_override is None else t_override
        blocks.append(guide.region_halfspaces(Y, fam._fw[lv.measure], t))
    return guide.joint_margin(blocks, fam.nrows)


def exact_constraints(fam: Family, rows: Sequence, t_override=None) -> list:
    cons = []
    for lv in fam.levels:
        R = rows[: lv.nrows]
        proj = fam.measures[lv.measure].map(R)
        t = lv.t if t_override is None else t_override
        pad = fam.nrows - lv.nrows
        for nrm, c in depth_halfspaces(proj, t):
            cons.append((tuple(nrm) + (Fraction(0),) * pad, c))
    return cons


def _rationalize(y: np.ndarray, cons: list):
    for den_bits in (8, 12, 16, 24, 32, 48):
        cand = tuple(Fraction(float(v)).limit_denominator(1 << den_bits) for v in y)
        if all(G.dot(a, cand) >= b for a, b in cons):
            return cand
    return None


def exact_point(fam: Family, rows: Sequence, y_float=None, t_override=None):
    """A rational y meeting every level constraint for these rows, or None."""
    cons = exact_constraints(fam, rows, t_override)
    if y_float is not None:
        y = _rationalize(y_float, cons)
        if y is not None:
            return y
    res = halfspace_feasible(cons, fam.nrows)
    return res.point if res.feasible else None


def lattice_order(P: int, box: Fraction, step: Fraction, cap: int, rng: random.Random):
    """Coarse-to-fine lattice points of [-box, box]^P, capped per level by seeded sampling."""
    seen = set()
    levels = []
    h = box
    while h >= step:
        levels.append(h)
        h /= 2
    for h in levels:
        n = int(2 * box / h)
        coords = [-box + i * h for i in range(n + 1)]
        total = (n + 1) ** P
        if total <= cap:
            pts = product(coords, repeat=P)
        else:
            pts = (tuple(rng.choice(coords) for _ in range(P)) for _ in range(cap))
        for p in pts:
            if p not in seen:
                seen.add(p)
                yield p


def run(fam: Family, cfg: SearchConfig, accept: Callable[[Found], object | None]) -> tuple[object | None, Attempt]:
    """Deterministic search; `accept` turns a Found into a certificate or rejects it."""
    rng = random.Random(cfg.seed)
    evals = 0
    scored = []  # (-margin, order, key, theta)
    att = Attempt(None, 0)

    def evaluate(key, theta):
        nonlocal evals
        evals += 1
        chart = fam.make(key, theta)
        rows_q = chart.rows()
        rows_f = np.array([[float(x) for x in r] for r in rows_q])
        s, y = float_margin(fam, rows_f)
        if s > att.best_margin:
            att.best_margin, att.best_key, att.best_theta = s, key, theta
        return s, y, chart, rows_q

    def try_exact(key, theta, y, chart, rows_q):
        yq = exact_point(fam, rows_q, y)
        if yq is None:
            return None
        return accept(Found(key, theta, chart, yq, evals))

    # zero-parameter families (e.g. k = 0) need a single evaluation per key
    per_key = max(1, cfg.budget // (2 * max(1, len(fam.keys))))
    gens = [(key, lattice_order(fam.nparams(key), cfg.box, cfg.grid_step, per_key, rng)) for key in fam.keys]
    order = 0
    active = list(gens)
    while active and evals < cfg.budget // 2:
        nxt = []
        for key, gen in active:
            # interleave keys in blocks so every chart is explored early
            for _ in range(8):
                theta = next(gen, None)
                if theta is None:
                    break
                s, y, chart, rows_q = evaluate(key, theta)
                scored.append((-s, order, key, theta))
                order += 1
                if s > -cfg.near_tol:
                    cert = try_exact(key, theta, y if s > cfg.margin_tol else None, chart, rows_q)
                    if cert is not None:
                        att.found, att.evals = cert, evals
                        return cert, att
                if evals >= cfg.budget // 2:
                    break
            else:
                nxt.append((key, gen))
                continue
        active = nxt
    # multistart pattern search from the best grid points
    scored.sort(key=lambda r: (r[0], r[1]))
    for neg, _, key, theta in scored[: cfg.restarts]:
        cur, cur_s = theta, -neg
        h = cfg.grid_step
        for _ in range(cfg.refine_depth):
            improved = True
            while improved and evals < cfg.budget:
                improved = False
                for i in range(len(cur)):
                    for sgn in (1, -1):
                        cand = cur[:i] + (cur[i] + sgn * h,) + cur[i + 1:]
                        s, y, chart, rows_q = evaluate(key, cand)
                        if s > -cfg.near_tol:
                            cert = try_exact(key, cand, y if s > cfg.margin_tol else None, chart, rows_q)
                            if cert is not None:
                                att.found, att.evals = cert, evals
                                return cert, att
                        if s > cur_s:
                            cur, cur_s, improved = cand, s, True
            h /= 2
            if evals >= cfg.budget:
                break
        if evals >= cfg.budget:
            break
    att.evals = evals
    return None, att


def max_min_threshold(fam: Family, rows: Sequence, candidates: Sequence[Fraction]):
    """Largest t among candidates with all levels feasible at threshold t (exact), with its point."""
    rows_f = np.array([[float(x) for x in r] for r in rows])
    for t in sorted(set(candidates), reverse=True):
        s, y = float_margin(fam, rows_f, float(t))
        if s < -1e-7:
            continue
        yq = exact_point(fam, rows, y if s > 0 else None, t_override=t)
        if yq is not None:
            return t, yq
    return Fraction(0), None


def depth_candidates(measures: Sequence[MassCloud]) -> list[Fraction]:
    """Every value a depth can take for one of the clouds (subset sums for uniform clouds)."""
    vals = set()
    for m in measures:
        ws = set(m.weights)
        if len(ws) == 1:
            w = next(iter(ws))
            vals.update(w * j for j in range(1, len(m) + 1))
        else:
            sums = {Fraction(0)}
            for w in m.weights:
                sums |= {s + w for s in sums}
            vals.update(s for s in sums if s > 0)
    return sorted(vals)
