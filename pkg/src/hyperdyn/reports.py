"""JSON reports written by the command line tool.

Field names are stable.  Keys are sorted and witnesses keep the canonical
enumeration order of the checkers, so two runs of the same command produce
identical files apart from ``timestamp`` and ``wall_time``.
"""

from __future__ import annotations

import dataclasses
import enum
import json
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .checkers import PropertyReport
from .groups import ActionSystem
from .shifts import Sft
from .suite import SuiteReport
from .theorems import TheoremCase

TIMING_FIELDS = ("timestamp", "wall_time")
# bounded certificates can hold tens of thousands of witnesses
MAX_WITNESSES = 64


def jsonable(obj):
    """Convert report values to plain JSON types."""
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(v) for v in obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj


def _clip(witnesses: list) -> dict:
    return {"witnesses": jsonable(witnesses[:MAX_WITNESSES]), "witness_count": len(witnesses)}


def system_descriptor(system) -> dict:
    if isinstance(system, Sft):
        return {
            "label": system.label,
            "kind": "sft",
            "alphabet": system.alphabet_size,
            "matrix": [list(r) for r in system.matrix],
        }
    assert isinstance(system, ActionSystem)
    return {
        "label": system.label,
        "kind": "finite",
        "points": system.point_count,
        "group": system.group.kind.value,
        "abelian": system.group.abelian,
        "generators": [list(g) for g in system.group.generators],
    }


def property_to_dict(report: PropertyReport) -> dict:
    out = {
        "property": report.property,
        "verdict": report.verdict.value,
        "vacuous": report.verdict.value == "vacuously-holds",
        "counterexample": jsonable(report.counterexample),
        "bounds": jsonable(report.bounds),
        "delta": jsonable(report.delta),
        "excluded": jsonable(report.excluded),
        "notes": report.notes,
        "details": jsonable(report.details),
        "attached": {
            k: property_to_dict(v) if isinstance(v, PropertyReport) else jsonable(v)
            for k, v in report.attached.items()
        },
        **_clip(report.witnesses),
    }
    return out


def case_to_dict(case: TheoremCase) -> dict:
    witnesses = {}
    for key, value in case.witnesses.items():
        if isinstance(value, list) and len(value) > MAX_WITNESSES:
            value = value[:MAX_WITNESSES]
        witnesses[key] = jsonable(value)
    return {
        "theorem": case.theorem,
        "system": case.system,
        "verdict": case.verdict.value,
        "vacuous": case.verdict.value == "confirmed-vacuously",
        "bounds": jsonable(case.bounds),
        "sides": jsonable(case.sides),
        "directions": jsonable(case.directions),
        "witnesses": witnesses,
        "notes": case.notes,
    }


def suite_to_dict(report: SuiteReport) -> dict:
    return {
        "name": report.name,
        "bounds": report.bounds,
        "passed": report.passed,
        "counts": report.counts(),
        "families": [
            {
                "name": f.name,
                "cases": [case_to_dict(c) for c in f.cases],
                "skipped": jsonable(f.skipped),
                "coverage": jsonable(f.coverage),
            }
            for f in report.families
        ],
        "wall_time": report.wall_time,
    }


def envelope(command: str, body: dict, passed: bool, wall_time: float) -> dict:
    return {
        "tool": "hyperdyn",
        "version": __version__,
        "command": command,
        "passed": passed,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "wall_time": round(wall_time, 6),
        **body,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def strip_timing(report):
    """Drop timestamp and wall-time fields at every depth."""
    if isinstance(report, dict):
        return {k: strip_timing(v) for k, v in report.items() if k not in TIMING_FIELDS}
    if isinstance(report, list):
        return [strip_timing(v) for v in report]
    return report
