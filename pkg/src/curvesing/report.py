"""Reports: per-point rows, verdicts and run environment, as text or JSON.

Structured output schema (all keys always present)::

    {"command": str, "status": int, "error": str | null,
     "environment": {"nmax": int, "max_depth": int, "seed": int, "backend": str, ...},
     "rows": [InvariantReport.to_json(), ...],
     "verdicts": [Verdict.to_json(), ...],
     "extra": {...command specific...}}

Infinite values are the string "inf".  Keys are sorted so that identical
inputs give byte-identical output.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field

from . import _linalg


def jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return v


@dataclass
class Report:
    command: str
    rows: list = dc_field(default_factory=list)
    verdicts: list = dc_field(default_factory=list)
    extra: dict = dc_field(default_factory=dict)
    environment: dict = dc_field(default_factory=dict)
    status: int = 0
    error: str | None = None

    def to_json(self):
        env = {"backend": _linalg.BACKEND}
        env.update(self.environment)
        return jsonable({
            "command": self.command,
            "status": self.status,
            "error": self.error,
            "environment": env,
            "rows": [r.to_json() for r in self.rows],
            "verdicts": [v.to_json() for v in self.verdicts],
            "extra": self.extra,
        })


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return str(v)


def _text(r: Report) -> str:
    doc = r.to_json()
    env = " ".join(f"{k}={v}" for k, v in sorted(doc["environment"].items()))
    lines = [f"{r.command}: {env}"]
    if doc["rows"]:
        cols = ["point", "field", "multiplicity", "jac", "jac_k", "delta", "delta_k", "residue_degree"]
        heads = ["point", "field", "m", "jac", "jac_k", "delta", "delta_k", "d"]
        table = [heads] + [[_fmt(row.get(c)) for c in cols] for row in doc["rows"]]
        widths = [max(len(t[i]) for t in table) for i in range(len(heads))]
        for t in table:
            lines.append("  " + "  ".join(s.ljust(w) for s, w in zip(t, widths)).rstrip())
        for row in doc["rows"]:
            for key in ("jac_unavailable", "delta_unavailable"):
                if key in row:
                    lines.append(f"  {row['point']}: {key.split('_')[0]} unavailable ({row[key]})")
    for v in doc["verdicts"]:
        lines.append(f"  [{v['status']}] {v['criterion']}: {v['consequence']}")
        for e in v["evidence"]:
            mark = {True: "ok", False: "fails", None: "?"}[e["passes"]]
            lines.append(f"      {e['point']}: {_fmt(e['value'])} ({mark})")
        for n in v.get("notes", []):
            lines.append(f"      note: {n}")
    for k, v in sorted(doc["extra"].items()):
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True)
        lines.append(f"  {k}: {v}")
    if r.error:
        lines.append(f"error: {r.error}")
    lines.append(f"status: {r.status}")
    return "\n".join(lines) + "\n"


def emit_report(r: Report, format: str = "text") -> bytes:
    if format in ("json", "structured"):
        return (json.dumps(r.to_json(), sort_keys=True, indent=2) + "\n").encode()
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    return _text(r).encode()
