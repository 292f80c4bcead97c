"""JSON file formats.

Ring file:    {"field": "GF(5)"|"QQ", "yvars": [..], "xvars": [..], "f": ["x^2", ..]}
Complex file: {"ring": <path or inline ring>, "periodic": {"A": [[..]], "B": [[..]],
               "degrees0": [..], "degrees1": [..], "certified": bool}}
Variety:      {"components": [{"generators": [..]}, ..],
               "points": {"field": "GF(5)", "members": [[1,0], ..]}}  (points on request)
Trace file:   the complex file format for the final pair, plus a "trace" array
              of {"p": str|null, "size": int, "variety-summary": str} records,
              so every trace file is also loadable as a complex file.

Matrix entries and generators use the expression grammar, so whatever the
tool writes it can parse back.  Loading a complex performs no validation
beyond shapes; the stored "certified" flag is a claim that `check` re-tests.
"""

from __future__ import annotations

import json
from pathlib import Path

from .complexes import PeriodicComplex, raw_periodic
from .errors import ParseError
from .fields import ExtensionField, field_name, parse_field
from .parser import parse_poly
from .pipelines import RealizationTrace
from .ring import RingSpec, make_ring
from .variety import ProjPoint, ZeroSetUnion


def ring_to_obj(ring: RingSpec) -> dict:
    return {
        "field": field_name(ring.field),
        "yvars": list(ring.yvars),
        "xvars": list(ring.xvars),
        "f": [fi.to_string() for fi in ring.f],
    }


def ring_from_obj(obj: dict) -> RingSpec:
    for key in ("field", "yvars", "xvars", "f"):
        if key not in obj:
            raise ParseError(f"ring object lacks {key!r}")
    return make_ring(parse_field(obj["field"]), obj["yvars"], obj["xvars"], obj["f"])


def load_ring(path: str | Path) -> RingSpec:
    with open(path) as fh:
        return ring_from_obj(json.load(fh))


def save_ring(ring: RingSpec, path: str | Path):
    Path(path).write_text(json.dumps(ring_to_obj(ring), indent=2) + "\n")


def complex_to_obj(C: PeriodicComplex) -> dict:
    return {
        "ring": ring_to_obj(C.ring),
        "periodic": {
            "A": [[e.to_string() for e in row] for row in C.A.entries],
            "B": [[e.to_string() for e in row] for row in C.B.entries],
            "degrees0": list(C.degrees0),
            "degrees1": list(C.degrees1),
            "certified": C.certified,
        },
    }


def complex_from_obj(obj: dict, base_dir: str | Path | None = None) -> PeriodicComplex:
    ring_obj = obj.get("ring")
    if isinstance(ring_obj, str):
        ring_path = Path(ring_obj)
        if not ring_path.is_absolute() and base_dir is not None:
            ring_path = Path(base_dir) / ring_path
        ring = load_ring(ring_path)
    elif isinstance(ring_obj, dict):
        ring = ring_from_obj(ring_obj)
    else:
        raise ParseError("complex object needs a 'ring' (inline or path)")
    periodic = obj.get("periodic")
    if not isinstance(periodic, dict):
        raise ParseError("complex object needs a 'periodic' block")
    for key in ("A", "B", "degrees0", "degrees1"):
        if key not in periodic:
            raise ParseError(f"'periodic' block lacks {key!r}")
    a = [[parse_poly(ring.ambient, e) for e in row] for row in periodic["A"]]
    b = [[parse_poly(ring.ambient, e) for e in row] for row in periodic["B"]]
    return raw_periodic(
        ring,
        a,
        b,
        tuple(int(d) for d in periodic["degrees0"]),
        tuple(int(d) for d in periodic["degrees1"]),
        certified=bool(periodic.get("certified", False)),
    )


def load_complex(path: str | Path) -> PeriodicComplex:
    path = Path(path)
    with open(path) as fh:
        return complex_from_obj(json.load(fh), base_dir=path.parent)


def save_complex(C: PeriodicComplex, path: str | Path):
    Path(path).write_text(json.dumps(complex_to_obj(C), indent=2) + "\n")


def _point_coords(pt: ProjPoint) -> list:
    fld = pt.field
    out = []
    for a in pt.coords:
        if isinstance(fld, ExtensionField):
            out.append(int(a[0]) if fld.in_prime_subfield(a) else [int(x) for x in a])
        else:
            out.append(int(a) if isinstance(a, int) else str(a))
    return out


def variety_to_obj(V: ZeroSetUnion, points: list[ProjPoint] | None = None) -> dict:
    obj = {
        "components": [
            {"generators": [g.to_string() for g in comp.gens]} for comp in V.components
        ]
    }
    if points is not None:
        obj["points"] = {
            "field": field_name(points[0].field) if points else field_name(V.ring.field),
            "members": [_point_coords(pt) for pt in points],
        }
    return obj


def trace_to_obj(trace: RealizationTrace) -> dict:
    obj = complex_to_obj(trace.final)
    records = []
    fld = trace.ring.field
    for stage in trace.stages:
        if stage.noncontractible is None:
            summary = "pointwise data not enumerated"
        elif stage.noncontractible:
            names = ", ".join(str(pt) for pt in stage.noncontractible)
            summary = f"noncontractible over {field_name(fld)}: {names}"
        else:
            summary = f"contractible at every {field_name(fld)} point"
        records.append(
            {
                "p": None if stage.scalar is None else stage.scalar.to_string(),
                "size": stage.size,
                "variety-summary": summary,
            }
        )
    obj["trace"] = records
    obj["requested-zero-set"] = [g.to_string() for g in trace.requested.components[0].gens]
    return obj


def save_trace(trace: RealizationTrace, path: str | Path):
    Path(path).write_text(json.dumps(trace_to_obj(trace), indent=2) + "\n")
