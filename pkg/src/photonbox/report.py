"""Report serialization: deterministic JSON and CSV tables."""

from __future__ import annotations

import csv
import io
import json
import math

import jsonschema
import numpy as np

from .scenario import Check, Scenario, execute, scenario_from_dict

SCHEMA_VERSION = "1.0"

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "scenario", "results", "checks"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "scenario": {
            "type": "object",
            "required": ["name", "kind", "params", "units", "seed", "output"],
        },
        "results": {
            "type": "object",
            "required": ["units"],
            "properties": {"units": {"enum": ["natural", "si"]}},
        },
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "passed", "measured", "threshold"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "measured": {"type": ["number", "boolean", "null"]},
                    "threshold": {"type": ["number", "boolean", "null"]},
                },
            },
        },
    },
}


def jsonable(obj):
    """Plain-Python copy of ``obj``; complex numbers become [re, im]."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            raise ValueError(f"non-finite number {value!r} in report")
        return value
    if isinstance(obj, (complex, np.complexfloating)):
        return [jsonable(obj.real), jsonable(obj.imag)]
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def build_report(scenario: Scenario, results: dict, checks: list[Check]) -> dict:
    return jsonable({
        "schema_version": SCHEMA_VERSION,
        "scenario": scenario.echo(),
        "results": results,
        "checks": [c.as_dict() for c in checks],
    })


def dumps(report: dict) -> str:
    """Stable text: sorted keys, shortest round-trip floats, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def validate(report: dict) -> None:
    jsonschema.validate(report, REPORT_SCHEMA)


def rerun(report: dict) -> dict:
    """Rebuild a report from its own scenario echo."""
    validate(report)
    echo = report["scenario"]
    raw = {k: echo[k] for k in ("name", "kind", "params", "units", "seed", "output")}
    # echoed params include filled defaults; None marks "not given"
    raw["params"] = {k: v for k, v in raw["params"].items() if v is not None}
    scenario = scenario_from_dict(raw, source="<report>")
    results, checks, _ = execute(scenario)
    return build_report(scenario, results, checks)


def to_csv(rows: list[dict]) -> str:
    """CSV with a header row; floats written as shortest round-trip text."""
    if not rows:
        return ""
    columns = list(rows[0])
    for row in rows[1:]:
        columns.extend(k for k in row if k not in columns)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(k)) for k in columns])
    return buf.getvalue()


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        return f"{float(v.real)!r}{float(v.imag):+}j"
    return str(v)
