"""JSON codecs for complexes, summaries, cut data, hierarchies and reports.

Rationals travel as "p/q" strings so no float ever touches them.
"""

import dataclasses
import json
import logging
from fractions import Fraction
from typing import Any, Dict

from config_loader import config
from errors import ParseError, StructuralError
from models.complexes import Cell, FVector, RegularCellComplex, SimplicialComplex
from models.summaries import CutData, Hierarchy, Interval, IntervalSummary, ManifoldSummary

logger = logging.getLogger(__name__)


def format_rational(value: Fraction) -> str:
    """"p/q" in lowest terms, or "p" for integers."""
    return str(Fraction(value))


def parse_rational(text: Any) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError.from_config("parse_error", source=repr(text), reason=str(e))


def complex_to_dict(complex_: RegularCellComplex) -> Dict[str, Any]:
    cells = []
    for cell in complex_.cells:
        record = {"id": cell.id, "dim": cell.dim, "boundary": sorted(cell.boundary_ids, key=str)}
        if cell.chi is not None:
            record["chi"] = cell.chi
        cells.append(record)
    return {"top_dim": complex_.top_dim, "cells": cells}


def complex_from_dict(data: Dict[str, Any]) -> RegularCellComplex:
    cells = tuple(
        Cell(record["id"], int(record["dim"]), frozenset(record.get("boundary", ())), record.get("chi"))
        for record in data["cells"]
    )
    complex_ = RegularCellComplex(cells)
    if "top_dim" in data and int(data["top_dim"]) != complex_.top_dim:
        raise StructuralError.from_config("dimension_mismatch", expected=data["top_dim"], actual=complex_.top_dim)
    return complex_


def simplicial_to_dict(complex_: SimplicialComplex) -> Dict[str, Any]:
    record: Dict[str, Any] = {
        "vertices": complex_.vertex_count,
        "facets": [sorted(facet) for facet in complex_.sorted_facets()],
    }
    if complex_.labels is not None:
        record["labels"] = [str(label) for label in complex_.labels]
    return record


def simplicial_from_dict(data: Dict[str, Any]) -> SimplicialComplex:
    labels = data.get("labels")
    return SimplicialComplex(
        int(data["vertices"]),
        frozenset(frozenset(int(v) for v in facet) for facet in data["facets"]),
        tuple(labels) if labels is not None else None,
    )


def summary_to_dict(summary: ManifoldSummary) -> Dict[str, Any]:
    return {
        "kind": "summary",
        "label": summary.label,
        "chi_total": summary.chi_total,
        "f": list(summary.f),
        "chiF": list(summary.chiF),
        "b0_boundary": summary.b0_boundary,
        "b1_boundary": summary.b1_boundary,
        "haken": summary.haken,
    }


def summary_from_dict(data: Dict[str, Any]) -> ManifoldSummary:
    return ManifoldSummary(
        chi_total=int(data["chi_total"]),
        f=tuple(data.get("f", (0, 0, 0, 0))),
        chiF=tuple(data.get("chiF", (0, 0, 0, 0))),
        b0_boundary=int(data.get("b0_boundary", 0)),
        b1_boundary=int(data.get("b1_boundary", 0)),
        label=data.get("label", ""),
        haken=bool(data.get("haken", True)),
    )


def cut_to_dict(cut: CutData) -> Dict[str, Any]:
    record = {"kind": "cut", **dataclasses.asdict(cut)}
    record["chiF_G"] = list(cut.chiF_G)
    return record


def cut_from_dict(data: Dict[str, Any]) -> CutData:
    fields = {f.name for f in dataclasses.fields(CutData)}
    unknown = set(data) - fields - {"kind"}
    if unknown:
        raise ParseError.from_config("parse_error", source="cut datum", reason=f"unknown fields {sorted(unknown)}")
    values = {key: value for key, value in data.items() if key in fields}
    if "chiF_G" in values:
        values["chiF_G"] = tuple(values["chiF_G"])
    return CutData(**values)


def interval_summary_to_dict(summary: IntervalSummary) -> Dict[str, Any]:
    return {
        "kind": "interval_summary",
        "label": summary.label,
        "chi_total": summary.chi_total,
        "f0": summary.f0,
        "f1": list(summary.f1),
        "f2": list(summary.f2),
        "f3": list(summary.f3),
        "chiF": list(summary.chiF),
        "b0_boundary": list(summary.b0_boundary),
    }


def hierarchy_to_dict(hierarchy: Hierarchy) -> Dict[str, Any]:
    return {
        "kind": "hierarchy",
        "stages": [{"summary": summary_to_dict(x), "cut": cut_to_dict(g)} for x, g in hierarchy.stages],
        "terminal": [summary_to_dict(cell) for cell in hierarchy.terminal],
    }


def hierarchy_from_dict(data: Dict[str, Any]) -> Hierarchy:
    stages = tuple((summary_from_dict(stage["summary"]), cut_from_dict(stage["cut"])) for stage in data["stages"])
    terminal = tuple(summary_from_dict(cell) for cell in data.get("terminal", ()))
    return Hierarchy(stages, terminal)


_DECODERS = {
    "summary": summary_from_dict,
    "cut": cut_from_dict,
    "hierarchy": hierarchy_from_dict,
}


def decode(data: Any):
    """Turn a parsed JSON value into the model object it describes."""
    if not isinstance(data, dict):
        raise ParseError.from_config("parse_error", source="document", reason="top level must be an object")
    if "cells" in data:
        return complex_from_dict(data)
    if "facets" in data:
        return simplicial_from_dict(data)
    kind = data.get("kind")
    if kind in _DECODERS:
        return _DECODERS[kind](data)
    raise ParseError.from_config("parse_error", source="document", reason=f"unrecognized document kind {kind!r}")


def load_document(text: str, source: str = "<input>"):
    """Parse and decode one JSON document; malformed input raises ParseError.

    Args:
        text: JSON text
        source: Name used in error messages

    Returns:
        The decoded complex, summary, cut datum or hierarchy
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError.from_config("parse_error", source=source, reason=str(e))
    try:
        return decode(data)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise ParseError.from_config("parse_error", source=source, reason=f"{type(e).__name__}: {e}")


def to_jsonable(value: Any) -> Any:
    """Recursively convert model objects into JSON-ready values with a canonical ordering."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, float):
        return format_rational(Fraction(value).limit_denominator())
    if isinstance(value, RegularCellComplex):
        return complex_to_dict(value)
    if isinstance(value, SimplicialComplex):
        return simplicial_to_dict(value)
    if isinstance(value, ManifoldSummary):
        return summary_to_dict(value)
    if isinstance(value, CutData):
        return cut_to_dict(value)
    if isinstance(value, IntervalSummary):
        return interval_summary_to_dict(value)
    if isinstance(value, Hierarchy):
        return hierarchy_to_dict(value)
    if isinstance(value, FVector):
        return {"counts": list(value.counts), "chi_sums": list(value.chi_sums)}
    if isinstance(value, Interval):
        return [value.lo, value.hi]
    if dataclasses.is_dataclass(value):
        record = {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
        for name in ("passed", "all_pass", "all_hold", "equivalence_holds"):
            if hasattr(type(value), name) and isinstance(getattr(type(value), name), property):
                record[name] = getattr(value, name)
        return record
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (set, frozenset)):
        return sorted((to_jsonable(item) for item in value), key=lambda item: json.dumps(item, sort_keys=True))
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    return str(value)


def dumps(value: Any) -> str:
    """Deterministic JSON text for any model object or report."""
    indent = config.get("output.json_indent", 2)
    return json.dumps(to_jsonable(value), indent=indent, sort_keys=True)
