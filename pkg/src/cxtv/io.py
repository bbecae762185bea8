"""JSON interchange: every scalar is a "num/den" string, output is canonical (sorted keys)."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import __version__
from .depth import DepthValue
from .errors import InstanceError
from .geometry import ComplexFlat, MassCloud
from .transversal import FlagCert, SearchReport, TransversalCert
from .tverberg import TverbergCert, TvInstance, TvReport

SCHEMA_VERSION = 1
INSTANCE_KINDS = ("measures", "tverberg", "gadget")


def q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def unq(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise InstanceError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise InstanceError(f"bad rational {s!r}: {e}") from None


def qv(v) -> list:
    return [q(x) for x in v]


def unqv(v) -> tuple:
    return tuple(unq(x) for x in v)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---- values ---------------------------------------------------------------------


def cloud_to_json(m: MassCloud) -> dict:
    return {"points": [qv(p) for p in m.points], "weights": qv(m.weights)}


def cloud_from_json(o: dict) -> MassCloud:
    pts = [unqv(p) for p in o["points"]]
    w = [unq(x) for x in o.get("weights", [])]
    return MassCloud(tuple(pts), tuple(w))


def flat_to_json(V: ComplexFlat) -> dict:
    return {"base": qv(V.base), "direction": [qv(b) for b in V.direction], "kind": V.kind, "k": V.k}


def flat_from_json(o: dict) -> ComplexFlat:
    return ComplexFlat(unqv(o["base"]), tuple(unqv(b) for b in o["direction"]), o["kind"], int(o["k"]))


def depth_to_json(dv: DepthValue) -> dict:
    return {"value": q(dv.value), "witness_normal": qv(dv.witness_normal), "witness_offset": q(dv.witness_offset)}


def depth_from_json(o: dict) -> DepthValue:
    return DepthValue(unq(o["value"]), unqv(o["witness_normal"]), unq(o["witness_offset"]))


def _trace(tr: dict) -> dict:
    return json.loads(json.dumps(tr, default=str))


def cert_to_json(cert) -> tuple[str, dict]:
    if isinstance(cert, TransversalCert):
        kind = "odd-transversal" if cert.flat.kind == "complex-plus-line" else "transversal"
        return kind, {"flat": flat_to_json(cert.flat), "depths": [depth_to_json(d) for d in cert.depths],
                      "bound": q(cert.bound), "trace": _trace(cert.trace)}
    if isinstance(cert, FlagCert):
        return "flag", {"flats": [flat_to_json(V) for V in cert.flats],
                        "depths": [[depth_to_json(d) for d in lv] for lv in cert.depths],
                        "bounds": qv(cert.bounds), "measures_at": cert.measures_at, "trace": _trace(cert.trace)}
    if isinstance(cert, TverbergCert):
        return "tverberg", {"flat": flat_to_json(cert.flat), "q": qv(cert.q), "partitions": cert.partitions,
                            "witnesses": [[[[i, q(w)] for i, w in part] for part in parts] for parts in cert.witnesses],
                            "trace": _trace(cert.trace)}
    raise InstanceError(f"cannot serialize {type(cert).__name__}")


def cert_from_json(kind: str, o: dict):
    if kind in ("transversal", "odd-transversal"):
        return TransversalCert(flat_from_json(o["flat"]), [depth_from_json(d) for d in o["depths"]],
                               unq(o["bound"]), o.get("trace", {}))
    if kind == "flag":
        return FlagCert([flat_from_json(V) for V in o["flats"]],
                        [[depth_from_json(d) for d in lv] for lv in o["depths"]],
                        [unq(b) for b in o["bounds"]], [list(x) for x in o["measures_at"]], o.get("trace", {}))
    if kind == "tverberg":
        return TverbergCert(flat_from_json(o["flat"]), unqv(o["q"]), [[list(p) for p in ps] for ps in o["partitions"]],
                            [[[(int(i), unq(w)) for i, w in part] for part in parts] for parts in o["witnesses"]],
                            o.get("trace", {}))
    raise InstanceError(f"unknown certificate kind {kind!r}")


def report_to_json(rep) -> dict:
    if isinstance(rep, SearchReport):
        return {"family": rep.family, "best_min_depth": q(rep.best_min_depth), "chart": rep.chart,
                "flat": flat_to_json(rep.flat) if rep.flat is not None else None,
                "evals": rep.evals, "target": q(rep.target)}
    if isinstance(rep, TvReport):
        return {"anchors_tried": rep.anchors_tried, "charts_tried": rep.charts_tried,
                "best_margin": repr(rep.best_margin), "exploratory": rep.exploratory}
    raise InstanceError(f"cannot serialize report {type(rep).__name__}")


# ---- instance files ---------------------------------------------------------------------


def tv_to_json(inst: TvInstance) -> dict:
    return {"d": inst.d, "k": inst.k, "sets": [[qv(p) for p in P] for P in inst.sets], "r": list(inst.r),
            "colors": inst.colors, "variant": inst.variant}


def tv_from_json(o: dict) -> TvInstance:
    return TvInstance(int(o["d"]), int(o["k"]), [[unqv(p) for p in P] for P in o["sets"]], list(o["r"]),
                      o.get("colors"), o.get("variant", "complex"))


def instance_file(kind: str, payload: dict, provenance: dict | None = None) -> dict:
    if kind not in INSTANCE_KINDS:
        raise InstanceError(f"unknown instance kind {kind!r}")
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload, "provenance": provenance or {}}


def measures_payload(d: int, k: int, measures) -> dict:
    return {"d": d, "k": k, "measures": [cloud_to_json(m) for m in measures]}


def load_instance(doc: dict):
    """Returns (kind, object): measures -> (d, k, [MassCloud]), tverberg -> TvInstance."""
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise InstanceError(f"unsupported schema_version {doc.get('schema_version')!r}")
    kind = doc.get("kind")
    p = doc.get("payload")
    if not isinstance(p, dict):
        raise InstanceError("payload missing")
    try:
        if kind in ("measures", "gadget"):
            return kind, (int(p["d"]), int(p["k"]), [cloud_from_json(m) for m in p["measures"]])
        if kind == "tverberg":
            return kind, tv_from_json(p)
    except KeyError as e:
        raise InstanceError(f"payload field {e} missing") from None
    raise InstanceError(f"unknown instance kind {kind!r}")


def certificate_file(kind: str, payload: dict, verdict, timing: float | None = None, status: str = "certified") -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "status": status, "certificate": payload,
            "verifier": {"ok": bool(verdict.ok), "reason": verdict.reason} if verdict is not None else None,
            "tool_version": __version__,
            "metadata": {"timing_s": timing}}


def deterministic_view(doc: dict) -> dict:
    """The part of a file covered by the determinism contract (timing metadata dropped)."""
    return {k: v for k, v in doc.items() if k != "metadata"}


def read(path) -> dict:
    with open(path) as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise InstanceError(f"{path}: invalid JSON: {e}") from None


def write(path, doc: dict) -> None:
    with open(path, "w") as f:
        f.write(dumps(doc))
