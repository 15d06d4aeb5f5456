"""Strict JSON formats for regions, lifts and reports.

Documents carry ``"version": 1`` and unknown fields are rejected.  Output keys
are emitted in a fixed order and floats use Python's shortest round-trip repr,
so identical inputs serialize to identical bytes.
"""

from __future__ import annotations

import json
import sys
from math import prod

import jsonschema

from .core import LABELS, PointDomain, euclidean, f_canonical, sp_canonical
from .errors import InputMismatch
from .regions import SampledRegion

VERSION = 1

_INDEX = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_LABEL = {"type": ["string", "integer"]}
_POINT = {"anyOf": [{"type": "array", "items": {"type": "number"}, "minItems": 1},
                    {"type": "number"}, _LABEL]}
_DOMAIN = {
    "oneOf": [
        {"type": "object", "additionalProperties": False, "required": ["kind"],
         "properties": {"kind": {"const": "labels"}}},
        {"type": "object", "additionalProperties": False, "required": ["kind", "dim"],
         "properties": {"kind": {"const": "euclidean"},
                        "dim": {"type": "integer", "minimum": 1}}},
    ]
}

REGION_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["version", "mode", "m", "n", "shape", "eps", "domain", "samples"],
    "properties": {
        "version": {"const": VERSION},
        "mode": {"enum": ["sp", "f"]},
        "m": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 1},
        "shape": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "eps": {"type": "number", "minimum": 0},
        "domain": _DOMAIN,
        "samples": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["index", "points"],
                "properties": {"index": _INDEX,
                               "points": {"type": "array", "items": _POINT, "minItems": 1}},
            },
        },
    },
}

LIFT_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["version", "kind", "status", "mode", "m", "shape", "lift", "events",
                 "segments", "diagnostics", "checks", "error"],
    "properties": {
        "version": {"const": VERSION},
        "kind": {"const": "lift"},
        "status": {"enum": ["ok", "failed", "obstructed"]},
        "mode": {"enum": ["sp", "f"]},
        "m": {"type": "integer", "minimum": 1},
        "shape": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "lift": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["index", "tuple"],
                "properties": {"index": _INDEX,
                               "tuple": {"type": "array", "items": _POINT}},
            },
        },
        "events": {"type": "array"},
        "segments": {"type": "array"},
        "diagnostics": {"type": "object"},
        "checks": {"$ref": "#/$defs/checks"},
        "error": {"type": ["object", "null"]},
    },
    "$defs": {
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["name", "verdict", "detail"],
                "properties": {"name": {"type": "string"},
                               "verdict": {"enum": ["pass", "fail"]},
                               "detail": {"type": "string"}},
            },
        },
    },
}


# -- reading ----------------------------------------------------------------

def read_text(path: str) -> str:
    """Contents of ``path``, or of stdin when ``path`` is ``-``."""
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputMismatch(f"cannot read {path}: {exc.strerror}") from exc


def _reject_constant(name):
    raise ValueError(f"non-finite number {name}")


def parse_json(text: str, schema: dict, what: str):
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except ValueError as exc:
        raise InputMismatch(f"{what}: invalid JSON ({exc})") from exc
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputMismatch(f"{what}: schema violation at {where}: {exc.message}") from exc
    return doc


def _domain_of(doc) -> PointDomain:
    return LABELS if doc["kind"] == "labels" else euclidean(doc["dim"])


def point_from_json(p, domain: PointDomain):
    if domain.exact:
        if isinstance(p, (list, float)) or isinstance(p, bool):
            raise InputMismatch(f"label domain expects string or integer labels, got {p!r}")
        return p
    if isinstance(p, str):
        raise InputMismatch(f"euclidean domain expects coordinates, got {p!r}")
    coords = [p] if not isinstance(p, list) else p
    if len(coords) != domain.dim:
        raise InputMismatch(f"point {p!r} does not have dimension {domain.dim}")
    coords = [float(c) for c in coords]
    return coords[0] if domain.dim == 1 else tuple(coords)


def point_to_json(p, domain: PointDomain):
    if domain.exact:
        return p
    return list(domain.coords(p))


def region_from_json(doc: dict) -> SampledRegion:
    domain = _domain_of(doc["domain"])
    shape = tuple(doc["shape"])
    if doc["n"] != len(shape):
        raise InputMismatch(f"n = {doc['n']} but shape has {len(shape)} axes")
    if prod(shape) != len(doc["samples"]):
        raise InputMismatch(f"shape {list(shape)} needs {prod(shape)} samples, "
                            f"got {len(doc['samples'])}")
    strides = [prod(shape[a + 1:]) for a in range(len(shape))]
    samples = [None] * prod(shape)
    for entry in doc["samples"]:
        idx = entry["index"]
        if len(idx) != len(shape) or any(i >= s for i, s in zip(idx, shape)):
            raise InputMismatch(f"grid index {idx} outside shape {list(shape)}")
        flat = sum(i * st for i, st in zip(idx, strides))
        if samples[flat] is not None:
            raise InputMismatch(f"grid index {idx} appears twice")
        pts = tuple(point_from_json(p, domain) for p in entry["points"])
        if doc["mode"] == "sp":
            if len(pts) != doc["m"]:
                raise InputMismatch(f"sample {idx} has {len(pts)} points, expected {doc['m']}")
            samples[flat] = sp_canonical(pts, domain)
        else:
            samples[flat] = f_canonical(pts, domain)
    return SampledRegion(doc["mode"], doc["m"], shape, samples, float(doc["eps"]), domain)


def load_region(path: str, eps: float | None = None) -> SampledRegion:
    doc = parse_json(read_text(path), REGION_SCHEMA, "region")
    if eps is not None:
        doc["eps"] = eps
    return region_from_json(doc)


def region_to_json(region: SampledRegion) -> dict:
    dom = region.domain
    domain = {"kind": "labels"} if dom.exact else {"kind": "euclidean", "dim": dom.dim}
    return {
        "version": VERSION,
        "mode": region.mode,
        "m": region.m,
        "n": region.n,
        "shape": list(region.shape),
        "eps": float(region.eps),
        "domain": domain,
        "samples": [{"index": list(region.grid_index(v)),
                     "points": [point_to_json(p, dom) for p in region.points(v)]}
                    for v in range(region.size)],
    }


def load_lift(path: str, region: SampledRegion) -> list[tuple]:
    """Tuples of a lift document, in flat node order of ``region``."""
    doc = parse_json(read_text(path), LIFT_SCHEMA, "lift")
    if tuple(doc["shape"]) != region.shape or doc["m"] != region.m or doc["mode"] != region.mode:
        raise InputMismatch(f"lift of shape {doc['shape']} (m={doc['m']}, {doc['mode']}) "
                            f"does not match region of shape {list(region.shape)} "
                            f"(m={region.m}, {region.mode})")
    out = [None] * region.size
    for entry in doc["lift"]:
        idx = entry["index"]
        if len(idx) != region.n or any(i >= s for i, s in zip(idx, region.shape)):
            raise InputMismatch(f"lift index {idx} outside shape {list(region.shape)}")
        flat = region.flat_index(idx)
        if out[flat] is not None:
            raise InputMismatch(f"lift index {idx} appears twice")
        if len(entry["tuple"]) != region.m:
            raise InputMismatch(f"lift tuple at {idx} has {len(entry['tuple'])} entries")
        out[flat] = tuple(point_from_json(p, region.domain) for p in entry["tuple"])
    missing = [region.grid_index(v) for v, t in enumerate(out) if t is None]
    if missing:
        raise InputMismatch(f"lift has no tuple at {list(missing[0])}")
    return out


# -- writing ----------------------------------------------------------------

def dumps(doc) -> str:
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def write_text(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _label_json(label):
    return label if isinstance(label, int) else list(label)


def lift_to_json(region: SampledRegion, lift, *, result=None, checks=(), status="ok",
                 error=None) -> dict:
    dom = region.domain
    events, segments, diagnostics = [], [], {}
    if result is not None:
        seg = result.segmentation
        gi = region.grid_index
        events = [{"id": ev.id,
                   "edge": [list(gi(ev.edge[0])), list(gi(ev.edge[1]))],
                   "axis": ev.axis,
                   "from": _label_json(ev.from_label),
                   "to": _label_json(ev.to_label),
                   "passing_nodes": [list(gi(v)) for v in ev.passing_nodes],
                   "glue": ev.id in result.glue_events}
                  for ev in seg.events]
        for s in seg.segments:
            sheet = result.shire.sheets[s.id]
            segments.append({"id": s.id,
                             "label": _label_json(s.label),
                             "size": len(s.nodes),
                             "seed": list(gi(sheet.seed_node)),
                             "via_event": sheet.via_event,
                             "sheet": list(sheet.permutation),
                             "boundary_events": list(s.boundary_events)})
        d = result.diagnostics
        diagnostics = {
            "segments": d["segments"],
            "events": d["events"],
            "passing_nodes": [list(gi(v)) for v in d["passing_nodes"]],
            "complete_shire": d["complete_shire"],
            "max_step_displacement": d["max_step_displacement"],
            "max_position_step": d["max_position_step"],
            "round_trip_residual": d["round_trip_residual"],
            "tie_breaks": [{"index": list(gi(t["node"])), "rule": t["rule"],
                            "optimal": t["optimal"]} for t in d["tie_breaks"]],
        }
        if "multiplicities" in d:
            diagnostics["multiplicities"] = [
                {"index": list(gi(int(k))), "counts": v} for k, v in d["multiplicities"].items()]
    return {
        "version": VERSION,
        "kind": "lift",
        "status": status,
        "mode": region.mode,
        "m": region.m,
        "shape": list(region.shape),
        "lift": [] if lift is None else
                [{"index": list(region.grid_index(v)),
                  "tuple": [point_to_json(p, dom) for p in t]} for v, t in enumerate(lift)],
        "events": events,
        "segments": segments,
        "diagnostics": diagnostics,
        "checks": list(checks),
        "error": error,
    }
