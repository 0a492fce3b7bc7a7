"""Command line front end.

Exit codes: 0 success, 1 corpus or verdict mismatch, 2 parse/input error,
3 extension required or unsupported field, 4 jets did not stabilize.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .commands import (
    Options,
    run_delta,
    run_family,
    run_jac,
    run_pencil,
    run_rigidity,
    run_smoothness,
)
from .corpus import load_corpus, run_corpus
from .documents import PencilDoc, load_document
from .errors import CurvesingError
from .fields import FieldDesc
from .jets import DEFAULT_NMAX
from .report import Report, emit_report

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_EXTENSION, EXIT_UNSTABLE = 0, 1, 2, 3, 4


def _common(p):
    p.add_argument("--jet-max", type=int, default=DEFAULT_NMAX, help="largest jet precision N (default %(default)s)")
    p.add_argument("--max-depth", type=int, default=1, help="extra p-th-root steps allowed (default %(default)s)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized factorization")
    p.add_argument("--workers", type=int, default=4)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="curvesing", description="Jacobian numbers and delta invariants of curve germs in characteristic p.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, help_ in (("jac", "Jacobian number at the marked point"),
                        ("delta", "delta invariant at the marked point (no base change)"),
                        ("gdelta", "geometric delta invariant, adjoining p-th roots up to --max-depth")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        _common(p)

    p = sub.add_parser("rigidity", help="rigidity criteria on a curve-on-surface spec")
    p.add_argument("file")
    _common(p)

    p = sub.add_parser("smoothness", help="smoothness criteria for a curve over an imperfect field")
    p.add_argument("file")
    p.add_argument("--not-lci", action="store_true", help="do not assume a local complete intersection")
    _common(p)

    p = sub.add_parser("family", help="semicontinuity scan of a one-parameter family")
    p.add_argument("file")
    p.add_argument("--invariant", choices=("jac", "delta"), default="jac")
    _common(p)

    p = sub.add_parser("pencil", help="singular member of the Fermat pencil")
    p.add_argument("--p", type=int, required=True, dest="prime")
    p.add_argument("--c", default=None, help="pencil parameter (expression in the field)")
    p.add_argument("--field", default=None, help='field descriptor as JSON, default F_{p^3}')
    _common(p)

    p = sub.add_parser("corpus", help="bundled example corpus")
    csub = p.add_subparsers(dest="corpus_cmd", required=True)
    r = csub.add_parser("run", help="run corpus cases")
    r.add_argument("--dir", default=None, help="case file or directory (default: bundled corpus)")
    r.add_argument("--only", action="append", help="substring filter on case names")
    _common(r)
    ls = csub.add_parser("list", help="list case names")
    ls.add_argument("--dir", default=None)
    return ap


def _options(args) -> Options:
    return Options(nmax=args.jet_max, max_depth=args.max_depth, seed=args.seed, workers=args.workers)


def _write(data: bytes):
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def _corpus(args) -> int:
    cases = load_corpus(args.dir)
    if args.corpus_cmd == "list":
        for c in sorted(cases, key=lambda c: c.name):
            print(c.name)
        return EXIT_OK
    results = run_corpus(cases, _options(args), args.workers, args.only)
    bad = [r for r in results if r.status != "pass"]
    if args.format == "json":
        _write((json.dumps({"results": [r.to_json() for r in results],
                            "passed": len(results) - len(bad), "total": len(results)},
                           sort_keys=True, indent=2) + "\n").encode())
    else:
        for r in results:
            line = f"{r.status.upper():5} {r.name}"
            if r.error:
                line += f"  ({r.error})"
            for k, e, a in r.mismatches:
                line += f"  [{k}: expected {e}, got {a}]"
            print(line)
        print(f"{len(results) - len(bad)}/{len(results)} passed")
    return EXIT_MISMATCH if bad else EXIT_OK


def _dispatch(args) -> Report:
    opts = _options(args)
    cmd = args.command
    if cmd == "pencil":
        fd = None if args.field is None else FieldDesc.from_json(json.loads(args.field))
        return run_pencil(PencilDoc(args.prime, args.c, fd), opts)
    if cmd == "jac":
        return run_jac(load_document(args.file), opts)
    if cmd in ("delta", "gdelta"):
        return run_delta(load_document(args.file), opts, geometric=cmd == "gdelta")
    if cmd == "rigidity":
        return run_rigidity(load_document(args.file, "spec"), opts)
    if cmd == "smoothness":
        return run_smoothness(load_document(args.file, "spec"), opts, lci=not args.not_lci)
    if cmd == "family":
        return run_family(load_document(args.file, "family"), args.invariant, opts)
    raise AssertionError(cmd)  # pragma: no cover


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "corpus":
            return _corpus(args)
        rep = _dispatch(args)
    except CurvesingError as exc:
        rep = Report(args.command, status=exc.exit_code, error=f"{type(exc).__name__}: {exc}")
        if args.command == "corpus":
            print(rep.error, file=sys.stderr)
            return rep.status
    except (OSError, ValueError) as exc:
        rep = Report(args.command, status=EXIT_PARSE, error=f"{type(exc).__name__}: {exc}")
    if args.command != "corpus":
        rep.environment.update(_options(args).env())
    _write(emit_report(rep, args.format))
    if rep.error:
        print(rep.error, file=sys.stderr)
    return rep.status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
