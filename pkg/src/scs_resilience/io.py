"""JSON documents for instances and reports.

Instance documents use the keys ``epsilon``, ``circles`` (a list of
``{id, x, y}``), and optionally ``edges``, ``directions`` and ``starts``.
Missing optional keys are filled in by validation. Floats are written with
12 significant digits and keys are sorted, so output is byte-stable.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .errors import ParseError, ValidationError
from .geometry import ANGLE_TOL, Instance, Point, make_instance
from .meeting import MeetingGraph
from .resilience import INFINITE, IndependentSet, ResilienceResult
from .rings import Decomposition
from .simulate import SimReport

SIG_DIGITS = 12


def _clean(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if obj is INFINITE:
        return INFINITE.value
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"cannot serialize {obj}")
        v = float(f"{obj:.{SIG_DIGITS}g}")
        return v + 0.0
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_clean(v) for v in obj]
        return sorted(items) if isinstance(obj, (set, frozenset)) else items
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc: Any) -> str:
    return json.dumps(_clean(doc), sort_keys=True, indent=2) + "\n"


# --- instances ---------------------------------------------------------------


def _require(doc: dict, key: str, kind, where: str = "document"):
    if key not in doc:
        raise ParseError(f"{where}: missing required field {key!r}")
    val = doc[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise ParseError(f"{where}: field {key!r} has the wrong type")
    return val


def _id_map(value, name: str, cast) -> dict[int, Any]:
    if isinstance(value, list):
        return {i: cast(v) for i, v in enumerate(value)}
    if not isinstance(value, dict):
        raise ParseError(f"field {name!r} must be an object mapping circle ids to values")
    out = {}
    for k, v in value.items():
        try:
            out[int(k)] = cast(v)
        except (TypeError, ValueError):
            raise ParseError(f"{name}[{k!r}]: invalid entry {v!r}") from None
    return out


def document_to_instance(doc: Any, angle_tol: float = ANGLE_TOL) -> Instance:
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    epsilon = _require(doc, "epsilon", (int, float))
    circles = _require(doc, "circles", list)
    by_id = {}
    for k, c in enumerate(circles):
        where = f"circles[{k}]"
        if not isinstance(c, dict):
            raise ParseError(f"{where}: expected an object with id, x, y")
        cid = _require(c, "id", int, where)
        x = _require(c, "x", (int, float), where)
        y = _require(c, "y", (int, float), where)
        if cid in by_id:
            raise ValidationError(f"{where}: duplicate circle id {cid}")
        by_id[cid] = Point(float(x), float(y))
    if sorted(by_id) != list(range(len(by_id))):
        raise ValidationError(f"circle ids must be 0..{len(by_id) - 1}, got {sorted(by_id)}")
    centers = [by_id[i] for i in range(len(by_id))]

    edges = None
    if doc.get("edges") is not None:
        raw = doc["edges"]
        if not isinstance(raw, list) or any(
            not isinstance(e, list) or len(e) != 2 or not all(isinstance(v, int) and not isinstance(v, bool) for v in e)
            for e in raw
        ):
            raise ParseError("field 'edges' must be a list of [i, j] integer pairs")
        edges = [tuple(e) for e in raw]
    directions = None
    if doc.get("directions") is not None:
        directions = _id_map(doc["directions"], "directions", int)
    starts = None
    if doc.get("starts") is not None:
        starts = _id_map(doc["starts"], "starts", float)
    return make_instance(centers, float(epsilon), edges, directions, starts, angle_tol)


def parse_instance(text: str, angle_tol: float = ANGLE_TOL) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return document_to_instance(doc, angle_tol)


def instance_to_document(instance: Instance, include_schedule: bool = True) -> dict:
    doc = {
        "epsilon": instance.epsilon,
        "circles": [{"id": t.id, "x": t.center.x, "y": t.center.y} for t in instance.trajectories],
        "edges": [list(e) for e in instance.graph.sorted_edges()],
    }
    if include_schedule and instance.schedule is not None:
        doc["directions"] = {str(i): g for i, g in enumerate(instance.schedule.directions)}
        doc["starts"] = {str(i): f for i, f in enumerate(instance.schedule.starts)}
    return doc


# --- report payloads -------------------------------------------------------


def rings_payload(dec: Decomposition) -> dict:
    rings = []
    for r in dec.rings:
        rings.append(
            {
                "id": r.id,
                "length_slots": r.length_slots,
                "arcs": [
                    {
                        "circle": a.circle,
                        "from_angle": a.from_angle,
                        "to_angle": a.to_angle,
                        "direction": a.direction,
                        "length_slots": a.length_slots,
                        "offset_slots": off,
                    }
                    for a, off in zip(r.arcs, r.offsets)
                ],
                "robots": dec.ring_robots(r.id),
            }
        )
    crossings = [
        {
            "edge": list(c.edge),
            "rings": [c.dir_ij_ring, c.dir_ji_ring],
            "offsets": [c.dir_ij_offset, c.dir_ji_offset],
            "self_crossing": c.is_self_crossing,
        }
        for c in dec.crossings
    ]
    placements = [
        {"robot": p.robot, "ring": p.ring, "index": p.index, "offset_slots": p.offset_slots}
        for p in dec.placements
    ]
    return {
        "rings": rings,
        "crossings": crossings,
        "placements": placements,
        "total_slots": sum(r.length_slots for r in dec.rings),
    }


def ties_payload(dec: Decomposition) -> dict:
    return {
        "ties": [
            {
                "crossing": list(t.crossing.edge),
                "ring": t.crossing.dir_ij_ring,
                "length_slots": t.length_slots,
                "entry_direction": list(t.entry_direction),
            }
            for t in dec.ties
        ],
        "distinct_lengths": {str(r): list(ls) for r, ls in dec.tie_lengths.items()},
        "distinct_count": {str(r): len(ls) for r, ls in dec.tie_lengths.items()},
    }


def graph_payload(graph: MeetingGraph) -> dict:
    certs = {}
    for (u, v), cs in graph.certificates.items():
        certs[f"{u}-{v}"] = [{k: val for k, val in vars(c).items() if val is not None} for c in cs]
    return {
        "n": graph.n,
        "adjacency": {str(u): sorted(graph.adjacency[u]) for u in range(graph.n)},
        "edges": [list(e) for e in graph.edges()],
        "min_degree": graph.min_degree() if graph.n else 0,
        "certificates": certs,
    }


def resilience_payload(res: ResilienceResult) -> dict:
    out = {
        "k": res.k,
        "value": res.value,
        "method": res.method,
        "starving": list(res.starving),
        "removed": list(res.removed),
    }
    if res.mode is not None:
        out["mode"] = {
            "value": res.mode.value,
            "frequency": res.mode.frequency,
            "multiset_sizes": list(res.mode.multiset_sizes),
        }
    return out


def independent_set_payload(result: IndependentSet) -> dict:
    return {"value": result.size, "witness": list(result.members)}


def simulation_payload(report: SimReport, include_events: bool = False) -> dict:
    counts = {}
    for e in report.events:
        counts[e.outcome] = counts.get(e.outcome, 0) + 1
    out = {
        "horizon": report.horizon,
        "period": report.period,
        "removed": sorted(report.removed),
        "starving": sorted(report.starving),
        "meetings_per_robot": {str(u): k for u, k in sorted(report.meetings_per_robot.items())},
        "event_counts": {"MET": counts.get("MET", 0), "SHIFTED": counts.get("SHIFTED", 0)},
        "occupancy": list(report.occupancy[0][1]) if report.occupancy else [],
        "occupancy_constant": all(c == report.occupancy[0][1] for _, c in report.occupancy),
        "diagnostics": list(report.diagnostics),
    }
    if include_events:
        out["events"] = [
            {"time": e.time, "crossing": list(e.crossing), "robots": list(e.arrivals), "outcome": e.outcome}
            for e in report.events
        ]
    return out
