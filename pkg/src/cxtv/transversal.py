"""Complex central transversals, flag transversals and odd-codimension transversals."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from . import geometry as G
from . import search as S
from .charts import FlagChart, GrassmannChart, OddChart, all_index_sets, all_sigmas
from .depth import DepthValue, flat_depth
from .errors import InstanceError
from .geometry import ComplexFlat, MassCloud
from .search import SearchConfig


def transversal_bound(d: int, k: int) -> Fraction:
    return Fraction(1, 2 * d - 2 * k + 1)


def odd_bound(d: int, k: int) -> Fraction:
    return Fraction(1, 2 * d - 2 * k + 2)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


@dataclass
class TransversalCert:
    flat: ComplexFlat
    depths: list
    bound: Fraction
    trace: dict = field(default_factory=dict)


@dataclass
class FlagCert:
    flats: list  # V_k, ..., V_{d-1}
    depths: list  # depths[j] = list of DepthValue for the measures checked at level k + j
    bounds: list
    measures_at: list  # measure indices checked at each level
    trace: dict = field(default_factory=dict)


@dataclass
class SearchReport:
    """Best-effort outcome when the budget runs out."""

    family: str
    best_min_depth: Fraction
    chart: dict
    flat: ComplexFlat | None
    evals: int
    target: Fraction


def _check_measures(measures, d, count):
    if len(measures) != count:
        raise InstanceError(f"expected {count} measures, got {len(measures)}")
    for i, m in enumerate(measures):
        if m.dim != 2 * d:
            raise InstanceError(f"measure {i} lives in R^{m.dim}, expected R^{2 * d}")


def _chart_info(key, theta) -> dict:
    return {"key": [list(k) if isinstance(k, tuple) else k for k in key] if isinstance(key, tuple) else key,
            "theta": [str(x) for x in theta]}


# ---- complex central transversal --------------------------------------------


def transversal_family(measures, d, k) -> S.Family:
    m = d - k
    t = transversal_bound(d, k)
    keys = all_index_sets(d, m)
    return S.Family(
        measures=list(measures),
        levels=[S.Level(i, 2 * m, t) for i in range(len(measures))],
        nrows=2 * m,
        keys=keys,
        make=lambda key, theta: GrassmannChart.from_params(d, key, theta),
        nparams=lambda key: 2 * m * k,
    )


def search_transversal(measures: Sequence[MassCloud], k: int, config: SearchConfig | None = None):
    """A complex k-flat of depth >= 1/(2d-2k+1) for each of the k+1 clouds.

    Returns a TransversalCert, or a SearchReport if the budget runs out.
    """
    cfg = config or SearchConfig()
    d = measures[0].dim // 2
    if not 0 <= k < d <= 3:
        raise InstanceError(f"need 0 <= k < d <= 3, got k={k}, d={d}")
    _check_measures(measures, d, k + 1)
    fam = transversal_family(measures, d, k)
    bound = transversal_bound(d, k)

    def accept(f: S.Found):
        V = f.chart.flat(f.y)
        depths = [flat_depth(mu, V) for mu in measures]
        if min(dv.value for dv in depths) < bound:
            return None
        return TransversalCert(V, depths, bound, {"seed": cfg.seed, "iterations": f.evals,
                                                  "chart": _chart_info(f.key, f.theta)})

    cert, att = S.run(fam, cfg, accept)
    if cert is not None:
        return cert
    return _report("transversal", fam, att, bound, measures, lambda key, th, y: fam.make(key, th).flat(y))


def _report(name, fam, att, bound, measures, flat_of):
    if att.best_key is None:
        return SearchReport(name, Fraction(0), {}, None, att.evals, bound)
    chart = fam.make(att.best_key, att.best_theta)
    t, y = S.max_min_threshold(fam, chart.rows(), S.depth_candidates(measures))
    V = flat_of(att.best_key, att.best_theta, y) if y is not None else None
    if V is not None:
        t = min(flat_depth(mu, V).value for mu in measures)
    return SearchReport(name, t, _chart_info(att.best_key, att.best_theta), V, att.evals, bound)


def verify_transversal(cert: TransversalCert, measures: Sequence[MassCloud], kind: str | None = None) -> Verdict:
    """Recompute every depth from scratch; checks kind, bound and recorded values."""
    V = cert.flat
    if kind is not None and V.kind != kind:
        return Verdict(False, f"kind: expected {kind}, certificate has {V.kind}")
    bad = V.kind_violation()
    if bad:
        return Verdict(False, f"kind-violation: {bad}")
    if len(cert.depths) != len(measures):
        return Verdict(False, "depth list length differs from measure count")
    if V.kind == "complex" and len(measures) != V.k + 1:
        return Verdict(False, f"complex {V.k}-flat needs {V.k + 1} measures")
    for i, (mu, dv) in enumerate(zip(measures, cert.depths)):
        if mu.dim != V.ambient:
            return Verdict(False, f"measure {i}: dimension mismatch")
        # recompute via the orthogonal projection onto the complement (independent of the chart)
        real = flat_depth(mu, V).value
        if real != dv.value:
            return Verdict(False, f"measure {i}: recorded depth {dv.value} but recomputed {real}")
        if mu.weight_of(dv.witness_normal, dv.witness_offset) != dv.value:
            return Verdict(False, f"measure {i}: witness halfspace weight differs from value")
        if any(G.dot(b, dv.witness_normal) != 0 for b in V.direction) or \
                G.dot(V.base, dv.witness_normal) != dv.witness_offset:
            return Verdict(False, f"measure {i}: witness halfspace does not contain the flat")
        if real < cert.bound:
            return Verdict(False, f"bound: measure {i} has depth {real} < claimed {cert.bound}")
    return Verdict(True)


# ---- odd codimension -----------------------------------------------------------


def odd_family(measures, d, k) -> S.Family:
    m = d - k
    t = odd_bound(d, k)
    keys = [(I, s) for I in all_index_sets(d, m) for s in range(2 * k)]
    return S.Family(
        measures=list(measures),
        levels=[S.Level(i, 2 * m + 1, t) for i in range(len(measures))],
        nrows=2 * m + 1,
        keys=keys,
        make=lambda key, theta: OddChart.from_params(d, key[0], key[1], theta),
        nparams=lambda key: 2 * m * k + 2 * k - 1,
    )


def search_odd_transversal(measures: Sequence[MassCloud], k: int, config: SearchConfig | None = None):
    """A flat of type complex (k-1) plus a real line, depth >= 1/(2d-2k+2) for each cloud."""
    cfg = config or SearchConfig()
    d = measures[0].dim // 2
    if not 1 <= k < d <= 3:
        raise InstanceError(f"need 1 <= k < d <= 3, got k={k}, d={d}")
    _check_measures(measures, d, k + 1)
    fam = odd_family(measures, d, k)
    bound = odd_bound(d, k)

    def accept(f: S.Found):
        V = f.chart.flat(f.y)
        depths = [flat_depth(mu, V) for mu in measures]
        if min(dv.value for dv in depths) < bound:
            return None
        return TransversalCert(V, depths, bound, {"seed": cfg.seed, "iterations": f.evals,
                                                  "chart": _chart_info(f.key, f.theta)})

    cert, att = S.run(fam, cfg, accept)
    if cert is not None:
        return cert
    return _report("odd-transversal", fam, att, bound, measures, lambda key, th, y: fam.make(key, th).flat(y))


# ---- flags -----------------------------------------------------------------------


def flag_levels(d, k):
    """(measure indices, bound, complex dimension) per level k..d-1."""
    out = [(list(range(k + 1)), transversal_bound(d, k), k)]
    for i in range(k + 1, d):
        out.append(([i], transversal_bound(d, i), i))
    return out


def flag_family(measures, d, k) -> S.Family:
    m = d - k
    levels = [S.Level(i, 2 * m, transversal_bound(d, k)) for i in range(k + 1)]
    levels += [S.Level(i, 2 * (d - i), transversal_bound(d, i)) for i in range(k + 1, d)]
    tmpl = {s: FlagChart(d, k, s, ()) for s in all_sigmas(d, m)}
    return S.Family(
        measures=list(measures),
        levels=levels,
        nrows=2 * m,
        keys=list(tmpl),
        make=lambda key, theta: FlagChart.from_params(d, k, key, theta),
        nparams=lambda key: tmpl[key].nparams,
    )


def search_flag_transversal(measures: Sequence[MassCloud], k: int, config: SearchConfig | None = None):
    """Nested complex flats V_k ⊆ ... ⊆ V_{d-1} with the per-level depth bounds."""
    cfg = config or SearchConfig()
    d = measures[0].dim // 2
    if not 0 <= k < d <= 3:
        raise InstanceError(f"need 0 <= k < d <= 3, got k={k}, d={d}")
    _check_measures(measures, d, d)
    fam = flag_family(measures, d, k)
    levels = flag_levels(d, k)

    def accept(f: S.Found):
        flats = f.chart.flats(f.y)
        depths = []
        for V, (idx, b, _) in zip(flats, levels):
            dv = [flat_depth(measures[i], V) for i in idx]
            if min(x.value for x in dv) < b:
                return None
            depths.append(dv)
        return FlagCert(flats, depths, [b for _, b, _ in levels], [idx for idx, _, _ in levels],
                        {"seed": cfg.seed, "iterations": f.evals, "chart": _chart_info(f.key, f.theta)})

    cert, att = S.run(fam, cfg, accept)
    if cert is not None:
        return cert
    best = SearchReport("flag", Fraction(0), _chart_info(att.best_key, att.best_theta) if att.best_key else {},
                        None, att.evals, transversal_bound(d, k))
    return best


def verify_flag(cert: FlagCert, measures: Sequence[MassCloud]) -> Verdict:
    if not cert.flats:
        return Verdict(False, "empty flag")
    for j, V in enumerate(cert.flats):
        bad = V.kind_violation()
        if bad or V.kind != "complex":
            return Verdict(False, f"level {j}: kind-violation: {bad or V.kind}")
        if j:
            W = cert.flats[j - 1]
            if V.k != W.k + 1:
                return Verdict(False, f"level {j}: dimension does not increase by one")
            if not V.contains_point(W.base) or any(not G.in_span(V.direction, b) for b in W.direction):
                return Verdict(False, f"level {j}: previous flat is not contained")
    for j, (V, idx, b, dvs) in enumerate(zip(cert.flats, cert.measures_at, cert.bounds, cert.depths)):
        if b != transversal_bound(V.d, V.k):
            return Verdict(False, f"level {j}: bound {b} is not 1/(2d-2k+1)")
        for i, dv in zip(idx, dvs):
            real = flat_depth(measures[i], V).value
            if real != dv.value or real < b:
                return Verdict(False, f"level {j}, measure {i}: depth {real} vs recorded {dv.value}, bound {b}")
    return Verdict(True)
