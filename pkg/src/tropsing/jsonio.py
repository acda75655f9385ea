"""JSON encoding/decoding for the CLI (schema "tropsing/1").

All rational values travel as exact strings ("p/q" or an integer string);
floats are rejected on input so no precision is ever lost.  Indices into a
configuration are 0-based and refer to the canonical point order.
"""

from fractions import Fraction

from .bergman import FlagOfFlats
from .curves import TropicalCurve
from .errors import ParseError
from .lattice import Circuit, PointConfiguration
from .singular import SingularityReport
from .subdivisions import MarkedSubdivision

SCHEMA = "tropsing/1"


def fraction_to_json(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fraction_from_json(value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"rationals must be ints or 'p/q' strings, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"bad rational literal {value!r}") from exc


def point_to_json(p):
    return [int(p[0]), int(p[1])]


def rational_point_to_json(p):
    return [fraction_to_json(p[0]), fraction_to_json(p[1])]


def config_to_json(config: PointConfiguration) -> dict:
    return {
        "points": [point_to_json(p) for p in config.points],
        "polygon": [point_to_json(p) for p in config.polygon],
        "saturated": config.saturated,
    }


def config_from_json(obj) -> PointConfiguration:
    if not isinstance(obj, dict) or "points" not in obj:
        raise ParseError("expected an object with a 'points' list")
    pts = obj["points"]
    if not isinstance(pts, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(c, int) for c in p)
        for p in pts
    ):
        raise ParseError("'points' must be a list of [i, j] integer pairs")
    relaxed = bool(obj.get("relaxed", False))
    if relaxed:
        return PointConfiguration.relaxed([tuple(p) for p in pts])
    return PointConfiguration([tuple(p) for p in pts])


def heights_from_json(config, obj):
    raw = obj.get("heights")
    if raw is None:
        raise ParseError("this command needs a 'heights' list")
    if not isinstance(raw, list) or len(raw) != config.size:
        raise ParseError(f"'heights' must list one rational per point ({config.size})")
    return tuple(fraction_from_json(x) for x in raw)


def heights_to_json(u):
    return [fraction_to_json(x) for x in u]


def subdivision_to_json(ms: MarkedSubdivision) -> dict:
    return {
        "cells": [
            {
                "polygon": [point_to_json(p) for p in cell.polygon],
                "marked": list(cell.marked),
            }
            for cell in ms.cells
        ],
        "white_points": list(ms.white_points()),
    }


def subdivision_from_json(config, obj) -> MarkedSubdivision:
    try:
        cells = [
            (tuple(tuple(p) for p in cell["polygon"]), tuple(cell["marked"]))
            for cell in obj["cells"]
        ]
    except (KeyError, TypeError) as exc:
        raise ParseError("bad subdivision object") from exc
    return MarkedSubdivision(config, cells)


def curve_to_json(curve: TropicalCurve) -> dict:
    return {
        "vertices": [rational_point_to_json(v) for v in curve.vertices],
        "bounded_edges": [
            {
                "ends": list(e.ends),
                "weight": e.weight,
                "dual_cells": list(e.dual_cells),
                "dual_segment": [point_to_json(p) for p in e.dual_segment],
            }
            for e in curve.edges
        ],
        "rays": [
            {
                "vertex": r.vertex,
                "direction": list(r.direction),
                "weight": r.weight,
                "dual_cell": r.dual_cell,
                "dual_segment": [point_to_json(p) for p in r.dual_segment],
            }
            for r in curve.rays
        ],
    }


def circuit_to_json(z: Circuit) -> dict:
    return {"indices": list(z.indices), "kind": z.kind}


def flag_to_json(flag: FlagOfFlats) -> dict:
    return {"flats": [list(f) for f in flag.flats]}


def flag_from_json(obj) -> FlagOfFlats:
    try:
        return FlagOfFlats(tuple(tuple(sorted(int(i) for i in f)) for f in obj))
    except (TypeError, ValueError) as exc:
        raise ParseError("a flag must be a list of index lists") from exc


def report_to_json(rep: SingularityReport) -> dict:
    out = {"kind": rep.kind}
    if rep.vertex is not None:
        out["vertex"] = rational_point_to_json(rep.vertex)
    if rep.dual_cell is not None:
        out["dual_cell"] = [point_to_json(p) for p in rep.dual_cell]
    if rep.multiplicity is not None:
        out["multiplicity"] = rep.multiplicity
    if rep.valence is not None:
        out["valence"] = rep.valence
    if rep.edge is not None:
        out["edge"] = [rational_point_to_json(v) for v in rep.edge]
    if rep.edge_weight is not None:
        out["edge_weight"] = rep.edge_weight
    if rep.ray_vertex is not None:
        out["ray_vertex"] = rational_point_to_json(rep.ray_vertex)
    if rep.ray_direction is not None:
        out["ray_direction"] = list(rep.ray_direction)
    if rep.ray_weight is not None:
        out["ray_weight"] = rep.ray_weight
    if rep.circuit is not None:
        out["circuit"] = circuit_to_json(rep.circuit)
    if rep.l1 is not None:
        out["l1"] = fraction_to_json(rep.l1)
    if rep.l2 is not None:
        out["l2"] = fraction_to_json(rep.l2)
    if rep.heights is not None:
        out["heights"] = {
            k: fraction_to_json(v) for k, v in rep.heights.items() if v is not None
        }
    if rep.maximal_dimensional is not None:
        out["maximal_dimensional"] = rep.maximal_dimensional
    if rep.note:
        out["note"] = rep.note
    return out
