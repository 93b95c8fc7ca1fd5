"""JSON file formats for curves, divisors and covers, plus report assembly.

Coefficients are always exact decimal strings ("3", "-1/2"), so loading and
re-dumping a canonical file reproduces it byte for byte.

Curve::

    {"model": "hyperelliptic", "f": ["10", "25", "22", "8", "1"], "label": "E"}

Divisor (places on a given curve; ``v`` null means the inert place over u,
``infinity`` lists multiplicities of the infinite places in index order)::

    {"places": [{"u": ["3/2", "0", "1"], "v": ["1/4"], "mult": 1}], "infinity": [0, 0]}

Cover (x -> xn/xd, y -> y * yn/yd in the source coordinates)::

    {"source": <curve>, "target": <curve>,
     "x_map": {"num": [...], "den": ["1"]}, "y_map": {"num": ["1"], "den": ["1"]}}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .arith import UniPoly, format_rational, parse_rational
from .curve import HyperCurve, Place, make_place, new_hyperelliptic
from .errors import PreconditionError
from .rrspace import Divisor

SCHEMA_VERSION = "1.0"
PROVENANCE = ("computed-exact", "paper-quoted", "external-input")


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def poly_to_json(p: UniPoly) -> list[str]:
    return [format_rational(c) for c in p.coeffs]


def poly_from_json(data) -> UniPoly:
    if not isinstance(data, list):
        raise PreconditionError(f"expected a coefficient list, got {data!r}")
    return UniPoly([parse_rational(c) for c in data])


# -- curves ------------------------------------------------------------------------

def curve_to_json(C: HyperCurve) -> dict:
    out = {"model": "hyperelliptic", "f": poly_to_json(C.f)}
    if C.label:
        out["label"] = C.label
    return out


def curve_from_json(data: dict) -> HyperCurve:
    if data.get("model", "hyperelliptic") != "hyperelliptic":
        raise PreconditionError(f"unsupported model {data.get('model')!r}")
    if "f" not in data:
        raise PreconditionError("curve spec needs field 'f'")
    return new_hyperelliptic(poly_from_json(data["f"]), data.get("label"))


def load_curve(path: str) -> HyperCurve:
    with open(path) as fh:
        return curve_from_json(json.load(fh))


# -- places and divisors -----------------------------------------------------------

def place_to_json(P: Place) -> dict:
    if not P.is_finite:
        return {"infinity": P.index}
    return {"u": poly_to_json(P.u), "v": None if P.v is None else poly_to_json(P.v)}


def place_from_json(C: HyperCurve, data: dict) -> Place:
    if "infinity" in data:
        idx = int(data["infinity"])
        places = C.infinite_places()
        if not 0 <= idx < len(places):
            raise PreconditionError(f"curve has {len(places)} infinite place(s)")
        return places[idx]
    u = poly_from_json(data["u"])
    v = data.get("v")
    return make_place(C, u, None if v is None else poly_from_json(v))


def divisor_to_json(D: Divisor) -> dict:
    places = []
    inf = [0] * len(D.curve.infinite_places())
    for P, n in D.items():
        if P.is_finite:
            entry = place_to_json(P)
            entry["mult"] = n
            places.append(entry)
        else:
            inf[P.index] = n
    return {"places": places, "infinity": inf}


def divisor_from_json(C: HyperCurve, data: dict) -> Divisor:
    entries = []
    for item in data.get("places", []):
        entries.append((place_from_json(C, item), int(item.get("mult", 1))))
    inf_places = C.infinite_places()
    inf = data.get("infinity", [])
    if len(inf) > len(inf_places):
        raise PreconditionError(f"curve has {len(inf_places)} infinite place(s)")
    for P, n in zip(inf_places, inf):
        entries.append((P, int(n)))
    return Divisor(C, entries)


# -- covers ------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverSpec:
    source: HyperCurve
    target: HyperCurve
    x_num: UniPoly
    x_den: UniPoly
    y_num: UniPoly
    y_den: UniPoly

    @property
    def degree(self) -> int:
        return max(self.x_num.degree, self.x_den.degree)


def cover_to_json(S: CoverSpec) -> dict:
    return {
        "source": curve_to_json(S.source),
        "target": curve_to_json(S.target),
        "x_map": {"num": poly_to_json(S.x_num), "den": poly_to_json(S.x_den)},
        "y_map": {"num": poly_to_json(S.y_num), "den": poly_to_json(S.y_den)},
    }


def cover_from_json(data: dict) -> CoverSpec:
    xm = data["x_map"]
    ym = data.get("y_map", {"num": ["1"], "den": ["1"]})
    spec = CoverSpec(curve_from_json(data["source"]), curve_from_json(data["target"]),
                     poly_from_json(xm["num"]), poly_from_json(xm.get("den", ["1"])),
                     poly_from_json(ym["num"]), poly_from_json(ym.get("den", ["1"])))
    if not spec.x_den or not spec.y_den or not spec.y_num:
        raise PreconditionError("map components must be nonzero with nonzero denominators")
    if spec.degree < 1:
        raise PreconditionError("the x-component of the map is constant")
    return spec


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


# -- reports -----------------------------------------------------------------------

def jsonable(value: Any) -> Any:
    """Exact, JSON-safe rendering of the values that appear in reports."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return value
    if isinstance(value, UniPoly):
        return str(value)
    if isinstance(value, Place):
        return value.label()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    return str(value)


class Report:
    """Accumulates a report; every claim carries a provenance tag."""

    def __init__(self, operation: str, curve: Any = None, inputs: dict | None = None):
        self.operation = operation
        self.curve = curve
        self.inputs = inputs or {}
        self.verdict: Any = None
        self.witnesses: list = []
        self.exceptional: list = []
        self.provenance: list[dict] = []
        self.failed: list[str] = []

    def claim(self, name: str, value: Any, provenance: str = "computed-exact", ok: bool | None = None):
        if provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance {provenance!r}")
        entry = {"claim": name, "value": jsonable(value), "provenance": provenance}
        if ok is not None:
            entry["ok"] = bool(ok)
            if not ok:
                self.failed.append(name)
        self.provenance.append(entry)
        return value

    def check(self, name: str, condition: bool, value: Any = None) -> bool:
        self.claim(name, condition if value is None else value, "computed-exact", ok=condition)
        return condition

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        curve = self.curve
        if isinstance(curve, HyperCurve):
            curve = curve_to_json(curve)
        return {
            "schema_version": SCHEMA_VERSION,
            "curve": jsonable(curve),
            "operation": self.operation,
            "inputs": jsonable(self.inputs),
            "verdict": jsonable(self.verdict),
            "witnesses": jsonable(self.witnesses),
            "exceptional": jsonable(self.exceptional),
            "provenance": self.provenance,
        }


def render_table(report: dict) -> str:
    lines = [f"operation: {report['operation']}", f"verdict:   {report['verdict']}"]
    if report.get("curve"):
        lines.append(f"curve:     {report['curve']}")
    for key in ("inputs", "witnesses", "exceptional"):
        if report.get(key):
            lines.append(f"{key}: {report[key]}")
    if report["provenance"]:
        width = max(len(e["claim"]) for e in report["provenance"])
        lines.append("")
        for e in report["provenance"]:
            mark = "" if "ok" not in e else ("  ok" if e["ok"] else "  FAILED")
            lines.append(f"  {e['claim']:<{width}}  {e['value']}  [{e['provenance']}]{mark}")
    return "\n".join(lines) + "\n"
