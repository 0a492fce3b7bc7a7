"""Document -> Report computations shared by the CLI and the corpus runner."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .criteria import (
    SurfaceCurveSpec,
    normalization_smoothness_verdict,
    rigidity_verdict,
    tate_smoothness_verdict,
)
from .documents import BranchDoc, CIDoc, FamilyDoc, GermDoc, PencilDoc, SpecDoc
from .errors import CurvesingError
from .family import semicontinuity_scan
from .invariants import (
    InvariantReport,
    analyze_point,
    delta_branch,
    invariants_of_pencil_member,
    jacobian_number_at,
    jacobian_number_ci,
)
from .jets import DEFAULT_NMAX
from .report import Report


@dataclass(frozen=True)
class Options:
    nmax: int = DEFAULT_NMAX
    max_depth: int = 1
    seed: int = 0
    workers: int = 4

    def env(self):
        return {"nmax": self.nmax, "max_depth": self.max_depth, "seed": self.seed}


def run_jac(doc, opts: Options = Options()) -> Report:
    r = Report("jac", environment=opts.env())
    if isinstance(doc, CIDoc):
        val = jacobian_number_ci(doc.germ(), opts.nmax)
        r.extra["jac"] = val
        r.environment["field"] = str(doc.field)
        return r
    rep = jacobian_number_at(doc.poly(), doc.point, opts.nmax, opts.max_depth, opts.seed)
    rep.point = doc.id or rep.point
    r.rows.append(rep)
    r.environment["field"] = str(doc.field)
    return r


def run_delta(doc, opts: Options = Options(), geometric: bool = False) -> Report:
    """delta at the point; ``geometric`` allows p-th-root base change up to max_depth."""
    r = Report("gdelta" if geometric else "delta", environment=opts.env())
    if isinstance(doc, BranchDoc):
        r.extra["delta"] = delta_branch(doc.param_branch(), opts.nmax)
        r.environment["field"] = str(doc.field)
        return r
    depth = opts.max_depth if geometric else 0
    rep = analyze_point(doc.poly(), doc.point, opts.nmax, depth, opts.seed)
    rep.point = doc.id or rep.point
    r.rows.append(rep)
    r.environment["field"] = str(doc.field)
    return r


def _germ_reports(germs, opts: Options):
    def one(g: GermDoc):
        try:
            rep = analyze_point(g.poly(), g.point, opts.nmax, opts.max_depth, opts.seed)
            rep.point = g.label
            return rep
        except CurvesingError as exc:
            return exc

    with ThreadPoolExecutor(max_workers=max(1, opts.workers)) as pool:
        return list(pool.map(one, germs))


def run_rigidity(doc: SpecDoc, opts: Options = Options()) -> Report:
    r = Report("rigidity", environment=opts.env())
    reps = _germ_reports(doc.germs, opts)
    C2, KC = doc.intersection if doc.intersection is not None else (None, None)
    pairs = [(g.label, rep) for g, rep in zip(doc.germs, reps)]
    spec = SurfaceCurveSpec(doc.p, pairs, C2, KC, doc.kodaira_nonnegative)
    r.verdicts = rigidity_verdict(spec)
    r.rows = [rep for rep in reps if isinstance(rep, InvariantReport)]
    errs = [f"{lab}: {type(e).__name__}: {e}" for lab, e in pairs if isinstance(e, Exception)]
    if errs:
        r.extra["errors"] = errs
    r.environment["p"] = doc.p
    return r


def run_smoothness(doc: SpecDoc, opts: Options = Options(), lci: bool = True) -> Report:
    """Smoothness verdicts for a curve over an imperfect field."""
    r = Report("smoothness", environment=opts.env())
    reps = _germ_reports(doc.germs, opts)
    pairs = [(g.label, rep) for g, rep in zip(doc.germs, reps)]
    r.verdicts = [
        normalization_smoothness_verdict(pairs, doc.p, lci),
        tate_smoothness_verdict([(lab, None if isinstance(rep, Exception) else rep.delta_k)
                                 for lab, rep in pairs], doc.p),
    ]
    r.rows = [rep for rep in reps if isinstance(rep, InvariantReport)]
    return r


def run_family(doc: FamilyDoc, invariant: str = "jac", opts: Options = Options()) -> Report:
    r = Report("family", environment=opts.env())
    spec = doc.spec()
    rec = semicontinuity_scan(spec, invariant, opts.nmax, opts.max_depth, opts.seed, opts.workers)
    r.extra = rec.to_json(spec.field)
    r.environment["field"] = str(doc.field)
    if not rec.verdict:
        r.status = 1
    return r


def run_pencil(doc: PencilDoc, opts: Options = Options()) -> Report:
    r = Report("pencil", environment=opts.env())
    K, c = doc.resolve()
    m = invariants_of_pencil_member(doc.p, c, K, opts.nmax, opts.max_depth, opts.seed)
    r.rows.append(m.report)
    r.extra = {"p": doc.p, "c": K.to_str(m.c), "parameter_field": str(K.desc),
               "residual_curve": str(m.curve), "germ": str(m.germ),
               "expected_delta": (doc.p - 1) * (doc.p - 2) // 2, "expected_jac": doc.p * (doc.p - 2)}
    r.environment["p"] = doc.p
    return r


def case_values(doc, opts: Options = Options()) -> dict:
    """Flat dict of computed values used by the corpus comparison."""
    if isinstance(doc, GermDoc):
        rep = analyze_point(doc.poly(), doc.point, opts.nmax, opts.max_depth, opts.seed)
        return {"jac": rep.jac_k, "jac_point": rep.jac, "delta": rep.delta_k, "delta_point": rep.delta,
                "multiplicity": rep.multiplicity, "residue_degree": rep.residue_degree,
                "tangents": rep.tangents}
    if isinstance(doc, BranchDoc):
        return {"delta": delta_branch(doc.param_branch(), opts.nmax)}
    if isinstance(doc, CIDoc):
        return {"jac": jacobian_number_ci(doc.germ(), opts.nmax)}
    if isinstance(doc, SpecDoc):
        rep = run_rigidity(doc, opts)
        return {"verdicts": {v.criterion: v.status for v in rep.verdicts}}
    if isinstance(doc, FamilyDoc):
        out = {}
        for inv in ("jac", "delta"):
            spec = doc.spec()
            rec = semicontinuity_scan(spec, inv, opts.nmax, opts.max_depth, opts.seed, 1)
            out[inv] = {"special_total": rec.special.total, "generic_total": rec.generic_total,
                        "samples": [s.total for s in rec.samples], "verdict": rec.verdict}
        return out
    if isinstance(doc, PencilDoc):
        K, c = doc.resolve()
        m = invariants_of_pencil_member(doc.p, c, K, opts.nmax, opts.max_depth, opts.seed)
        return {"jac": m.report.jac, "delta": m.report.delta, "multiplicity": m.report.multiplicity}
    raise TypeError(f"no values for {type(doc).__name__}")
