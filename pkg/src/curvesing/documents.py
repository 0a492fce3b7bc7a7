"""JSON input documents: germ, branch, complete intersection, spec, family, pencil.

Every document class has ``from_json`` and ``to_json`` with
``from_json(d).to_json() == d`` for canonical documents (defaults spelled
out), and expressions kept as strings in the parser grammar.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .errors import ParseError
from .fields import FieldDesc, make_field
from .points import PointSpec
from .poly import Poly, parse_const, parse_poly


def _need(doc, key, kind):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"{kind} document needs a {key!r} entry")
    return doc[key]


def _field(doc) -> FieldDesc:
    try:
        return FieldDesc.from_json(doc)
    except (TypeError, ValueError, KeyError) as exc:
        raise ParseError(f"bad field descriptor: {exc}") from None


@dataclass(frozen=True)
class GermDoc:
    field: FieldDesc
    f: str
    vars: tuple = ("S", "T")
    point: PointSpec = PointSpec.origin()
    id: str | None = None

    kind = "germ"

    @classmethod
    def from_json(cls, doc):
        vars = tuple(doc.get("vars", ("S", "T")))
        if len(vars) != 2:
            raise ParseError("a germ document needs exactly two variables")
        return cls(_field(_need(doc, "field", "germ")), str(_need(doc, "f", "germ")), vars,
                   PointSpec.from_json(doc.get("point", "origin")), doc.get("id"))

    def to_json(self):
        doc = {"field": self.field.to_json(), "vars": list(self.vars), "f": self.f,
               "point": self.point.to_json()}
        if self.id is not None:
            doc["id"] = self.id
        return doc

    def poly(self) -> Poly:
        return parse_poly(self.f, make_field(self.field), self.vars)

    @property
    def label(self):
        return self.id or self.f


@dataclass(frozen=True)
class BranchDoc:
    field: FieldDesc
    branch: tuple  # (x(u), y(u)) expressions
    param: str = "u"

    kind = "branch"

    @classmethod
    def from_json(cls, doc):
        br = _need(doc, "branch", "branch")
        if not isinstance(br, list) or len(br) != 2:
            raise ParseError("branch needs two coordinate expressions")
        return cls(_field(_need(doc, "field", "branch")), tuple(str(b) for b in br), doc.get("param", "u"))

    def to_json(self):
        return {"field": self.field.to_json(), "param": self.param, "branch": list(self.branch)}

    def param_branch(self):
        from .invariants import BranchParam

        K = make_field(self.field)
        x, y = (parse_poly(b, K, (self.param,)) for b in self.branch)
        return BranchParam.from_polys(x, y, self.param)


@dataclass(frozen=True)
class CIDoc:
    field: FieldDesc
    vars: tuple
    equations: tuple

    kind = "ci"

    @classmethod
    def from_json(cls, doc):
        eqs = _need(doc, "equations", "complete intersection")
        return cls(_field(_need(doc, "field", "complete intersection")),
                   tuple(_need(doc, "vars", "complete intersection")), tuple(str(e) for e in eqs))

    def to_json(self):
        return {"field": self.field.to_json(), "vars": list(self.vars), "equations": list(self.equations)}

    def germ(self):
        from .invariants import CompleteIntersectionGerm

        K = make_field(self.field)
        return CompleteIntersectionGerm(tuple(parse_poly(e, K, self.vars) for e in self.equations))


@dataclass(frozen=True)
class SpecDoc:
    p: int
    germs: tuple = ()
    kodaira_nonnegative: bool | None = None
    intersection: tuple | None = None  # (C2, KC)

    kind = "spec"

    @classmethod
    def from_json(cls, doc):
        p = _need(doc, "p", "spec")
        germs = tuple(GermDoc.from_json(g) for g in doc.get("germs", []))
        inter = doc.get("intersection")
        if inter is not None:
            inter = (int(_need(inter, "C2", "intersection")), int(_need(inter, "KC", "intersection")))
        return cls(int(p), germs, doc.get("kodaira_nonnegative"), inter)

    def to_json(self):
        return {
            "p": self.p,
            "kodaira_nonnegative": self.kodaira_nonnegative,
            "germs": [g.to_json() for g in self.germs],
            "intersection": None if self.intersection is None
            else {"C2": self.intersection[0], "KC": self.intersection[1]},
        }


@dataclass(frozen=True)
class FamilyDoc:
    field: FieldDesc
    f: str
    special: str = "0"
    samples: object = "all"  # "all" or tuple of expressions
    param: str = "u"
    vars: tuple = ("S", "T")
    bound: int | None = None

    kind = "family"

    @classmethod
    def from_json(cls, doc):
        samples = doc.get("samples", "all")
        if samples != "all":
            if not isinstance(samples, list):
                raise ParseError('samples must be "all" or a list of expressions')
            samples = tuple(str(s) for s in samples)
        return cls(_field(_need(doc, "field", "family")), str(_need(doc, "f", "family")),
                   str(doc.get("special", "0")), samples, doc.get("param", "u"),
                   tuple(doc.get("vars", ("S", "T"))), doc.get("bound"))

    def to_json(self):
        doc = {"field": self.field.to_json(), "param": self.param, "vars": list(self.vars), "f": self.f,
               "special": self.special,
               "samples": self.samples if self.samples == "all" else list(self.samples)}
        if self.bound is not None:
            doc["bound"] = self.bound
        return doc

    def spec(self):
        from .family import family_from_desc

        return family_from_desc(self.field, self.f, self.special, self.samples, self.param,
                                self.vars, self.bound)


@dataclass(frozen=True)
class PencilDoc:
    p: int
    c: str | None = None
    field: FieldDesc | None = None

    kind = "pencil"

    @classmethod
    def from_json(cls, doc):
        fd = doc.get("field")
        return cls(int(_need(doc, "p", "pencil")), doc.get("c"), None if fd is None else _field(fd))

    def to_json(self):
        return {"p": self.p, "c": self.c, "field": None if self.field is None else self.field.to_json()}

    def resolve(self):
        """(field, raw c or None)."""
        from .fields import gf

        K = make_field(self.field) if self.field is not None else gf(self.p, 3)
        c = None if self.c is None else parse_const(self.c, K)
        return K, c


KINDS = {cls.kind: cls for cls in (GermDoc, BranchDoc, CIDoc, SpecDoc, FamilyDoc, PencilDoc)}


def guess_kind(doc) -> str:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if "germs" in doc:
        return "spec"
    if "branch" in doc:
        return "branch"
    if "equations" in doc:
        return "ci"
    if "param" in doc or "special" in doc or "samples" in doc:
        return "family"
    if "p" in doc and "f" not in doc:
        return "pencil"
    return "germ"


def parse_document(doc, kind: str | None = None):
    kind = kind or guess_kind(doc)
    try:
        cls = KINDS[kind]
    except KeyError:
        raise ParseError(f"unknown document kind {kind!r}") from None
    return cls.from_json(doc)


def load_document(path, kind: str | None = None):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc.msg}", exc.pos) from None
    return parse_document(doc, kind)
