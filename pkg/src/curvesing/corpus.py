"""The bundled example corpus: JSON case files with tagged expected values.

A case file looks like::

    {"name": "node-p5", "kind": "germ", "input": {...document...},
     "expect": {"jac": 1, "delta": 1},
     "provenance": {"jac": "PUBLISHED", "delta": "PUBLISHED"},
     "oracle": null, "note": "..."}

Tags: PUBLISHED (a value stated in the literature), TRIVIAL (immediate by
hand), DERIVED (computed by an independent oracle named in ``oracle``).
Comparison is exact; "inf" stands for an infinite colength.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path

from .commands import Options, case_values
from .documents import parse_document
from .errors import CurvesingError, ParseError
from .report import jsonable

TAGS = ("PUBLISHED", "TRIVIAL", "DERIVED")


@dataclass(frozen=True)
class CorpusCase:
    name: str
    kind: str
    input: dict
    expect: dict
    provenance: dict
    oracle: str | None = None
    note: str | None = None

    @classmethod
    def from_json(cls, doc):
        try:
            case = cls(doc["name"], doc["kind"], doc["input"], doc["expect"], doc["provenance"],
                       doc.get("oracle"), doc.get("note"))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed corpus case: missing {exc}") from None
        case.validate()
        return case

    def to_json(self):
        return {"name": self.name, "kind": self.kind, "input": self.input, "expect": self.expect,
                "provenance": self.provenance, "oracle": self.oracle, "note": self.note}

    def validate(self):
        for key in self.expect:
            tag = self.provenance.get(key)
            if tag not in TAGS:
                raise ParseError(f"case {self.name}: expected value {key!r} has no provenance tag")
            if tag == "DERIVED" and not self.oracle:
                raise ParseError(f"case {self.name}: DERIVED value {key!r} must name its oracle")


@dataclass
class CaseResult:
    name: str
    status: str  # "pass" | "fail" | "error"
    mismatches: list = dc_field(default_factory=list)
    actual: dict = dc_field(default_factory=dict)
    error: str | None = None

    def to_json(self):
        return {"name": self.name, "status": self.status,
                "mismatches": [{"key": k, "expected": e, "actual": a} for k, e, a in self.mismatches],
                "actual": self.actual, "error": self.error}


def _compare(prefix, expected, actual, out):
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            out.append((prefix, expected, actual))
            return
        for k, v in expected.items():
            _compare(f"{prefix}.{k}" if prefix else k, v, actual.get(k), out)
    elif expected != actual:
        out.append((prefix, expected, actual))


def run_case(case: CorpusCase, opts: Options = Options()) -> CaseResult:
    try:
        doc = parse_document(case.input, case.kind)
        actual = jsonable(case_values(doc, opts))
    except CurvesingError as exc:
        return CaseResult(case.name, "error", error=f"{type(exc).__name__}: {exc}")
    mism: list = []
    _compare("", case.expect, actual, mism)
    return CaseResult(case.name, "fail" if mism else "pass", mism, actual)


def corpus_dir() -> Path:
    return Path(str(resources.files("curvesing") / "corpus"))


def load_corpus(path=None) -> list[CorpusCase]:
    root = Path(path) if path else corpus_dir()
    files = sorted(root.glob("*.json")) if root.is_dir() else [root]
    cases = []
    for fp in files:
        with open(fp, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParseError(f"{fp}: invalid JSON: {exc.msg}", exc.pos) from None
        for doc in data if isinstance(data, list) else [data]:
            cases.append(CorpusCase.from_json(doc))
    names = [c.name for c in cases]
    if len(set(names)) != len(names):
        raise ParseError("duplicate case names in corpus")
    return cases


def run_corpus(cases, opts: Options = Options(), workers: int = 4, only=None) -> list[CaseResult]:
    """Run cases concurrently; results come back ordered by case name."""
    if only:
        cases = [c for c in cases if any(s in c.name for s in only)]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = list(pool.map(lambda c: run_case(c, opts), cases))
    return sorted(results, key=lambda r: r.name)
