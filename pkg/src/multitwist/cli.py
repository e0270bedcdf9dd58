"""``multitwist`` command line.

Curves are given either as ids of the selected corpus entry (``--schema``) or
as edge words such as ``x1,y1-@1,y1-@0``.  Braid questions can also be posed as
JSON request files; see ``docs/formats.md``.

Exit codes: 0 success (braided / consistent / all checks pass), 1 negative
answer (not braided / rejected / some check failed), 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Mapping

from . import corpus as corpus_mod
from . import report
from .braid import (
    BraidDecomposition,
    BraidHomSpec,
    Rejection,
    certify_with_oracle,
    decide_braided,
    enumerate_table,
    factor_braid_hom,
)
from .core import IntersectionData, MultiTwist
from .formulas import hidden_formula
from .surface import engine
from .surface.curve import EmbeddedCurve
from .surface.schema import load_schema
from .sweep import CHECKS, SweepConfig, SweepResult, replay, run_sweep

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# -- input parsing ---------------------------------------------------------------------


def _corpus(args) -> corpus_mod.Corpus:
    return corpus_mod.load(args.schema)


def parse_curve(c: corpus_mod.Corpus, text: str) -> EmbeddedCurve:
    if text in c.curves:
        return c.curves[text]
    tokens = [t for t in text.replace(",", " ").split() if t]
    if not tokens:
        raise InputError(f"empty curve {text!r}")
    return EmbeddedCurve.from_labels(c.schema, tokens, "a")


def parse_twist(c: corpus_mod.Corpus, text: str) -> MultiTwist:
    """A corpus multitwist name or ``id:n,id:n`` over corpus curve ids."""
    if text in c.multitwists:
        return c.multitwists[text]
    comps = []
    for part in (p for p in text.replace(" ", ",").split(",") if p):
        cid, _, n = part.partition(":")
        if cid not in c.curves:
            raise InputError(f"unknown curve {cid!r} in twist {text!r}")
        try:
            comps.append((cid, int(n) if n else 1))
        except ValueError:
            raise InputError(f"bad exponent in {part!r}") from None
    return MultiTwist.of(*comps)


def _twist_json(obj) -> MultiTwist:
    return MultiTwist.from_json(obj if isinstance(obj, Mapping) else {"components": obj})


def load_request(path: str):
    """``(tA, tB, data, curves, tests)`` from a braid request file."""
    obj = json.loads(Path(path).read_text())
    tA, tB = _twist_json(obj["tA"]), _twist_json(obj["tB"])
    curves, tests = {}, []
    schema_obj = obj.get("schema")
    if schema_obj is not None:
        if isinstance(schema_obj, str):
            base = corpus_mod.load(schema_obj)
            schema, curves, tests = base.schema, dict(base.curves), list(base.test_set)
        else:
            schema = load_schema(schema_obj)
        for k, w in obj.get("curves", {}).items():
            curves[k] = EmbeddedCurve.from_json(schema, w).renamed(k)
        tests = obj.get("test_set", tests)
    data = IntersectionData.from_json(obj["intersections"]) if "intersections" in obj else None
    if data is None:
        ids = sorted({r.id for r in tA.curves} | {r.id for r in tB.curves})
        missing = [k for k in ids if k not in curves]
        if missing:
            raise InputError(f"no intersections given and no embedding for {missing}")
        data = engine.intersection_table([curves[k] for k in ids], algebraic=False)
    return tA, tB, data, curves, [curves[k] for k in tests]


def _word(curve: EmbeddedCurve) -> str:
    return " ".join(f"{l}{'' if d > 0 else '-'}@{s}" for l, d, s in curve.word)


def _min_rotation(curve: EmbeddedCurve, unoriented: bool) -> EmbeddedCurve:
    options = [curve.canonical()]
    if unoriented:
        options.append(curve.reversed().canonical())
    best = None
    for c in options:
        w = c.word
        for k in range(len(w)):
            rot = w[k:] + w[:k]
            if best is None or rot < best:
                best = rot
    return EmbeddedCurve(curve.schema, best, curve.name)


# -- commands ------------------------------------------------------------------------


def cmd_intersect(args):
    c = _corpus(args)
    x, y = parse_curve(c, args.curve1), parse_curve(c, args.curve2)
    doc = report.document("intersect", curves=[args.curve1, args.curve2],
                          geometric=engine.geometric_intersection(x, y),
                          algebraic=engine.algebraic_intersection(x, y))
    return doc, EXIT_OK


def cmd_twist(args):
    c = _corpus(args)
    x, t = parse_curve(c, args.curve), parse_twist(c, args.twist)
    img = engine.apply_multitwist(t, x, c.curves)
    doc = report.document("twist", curve=args.curve, twist=t.to_json(), image=_word(img),
                          word=img.to_json()["word"], length=len(img))
    return doc, EXIT_OK


def cmd_xfunction(args):
    c = _corpus(args)
    x, t = parse_curve(c, args.curve), parse_twist(c, args.twist)
    prof = engine.crossing_profile(x, t, c.curves)
    doc = report.document("x-function", curve=args.curve, twist=t.to_json(),
                          sequence=[r.id for r in prof.sequence], arc_flags=list(prof.arc_flags),
                          X=sum(prof.arc_flags))
    if args.measure:
        doc["formula"] = hidden_formula(prof)
        doc["measured"] = engine.geometric_intersection(x, engine.apply_multitwist(t, x, c.curves))
    return doc, EXIT_OK


def _braid_inputs(args):
    if args.request:
        return load_request(args.request)
    if not (args.ta and args.tb):
        raise InputError("give a request file or --ta and --tb")
    c = _corpus(args)
    tA, tB = parse_twist(c, args.ta), parse_twist(c, args.tb)
    ids = sorted({r.id for r in tA.curves} | {r.id for r in tB.curves})
    data = engine.intersection_table([c.curves[k] for k in ids], algebraic=False)
    return tA, tB, data, c.curves, c.tests()


def _decide(args, with_oracle: bool):
    tA, tB, data, curves, tests = _braid_inputs(args)
    result = decide_braided(tA, tB, data)
    cert = None
    if with_oracle and tests and not args.no_oracle:
        cert = certify_with_oracle(tA, tB, curves, tests, data, orbit_cap=args.orbit_cap)
    doc = report.decision_document(result, cert)
    return doc, EXIT_OK if isinstance(result, BraidDecomposition) else EXIT_NO


def cmd_check_braid(args):
    doc, code = _decide(args, with_oracle=not args.no_oracle)
    doc.pop("decomposition", None)
    doc.pop("witness", None)
    if "oracle" in doc:
        doc["oracle"] = {k: doc["oracle"][k] for k in ("braided", "agree")}
    return doc, code


def cmd_decompose(args):
    return _decide(args, with_oracle=True)


def cmd_factor_hom(args):
    obj = json.loads(Path(args.request).read_text())
    spec = BraidHomSpec.from_json(obj)
    if "intersections" in obj:
        data = IntersectionData.from_json(obj["intersections"])
    else:
        c = corpus_mod.load(obj.get("schema") or args.schema)
        ids = sorted({r.id for t in spec.images for r in t.curves})
        data = engine.intersection_table([c.curves[k] for k in ids], algebraic=False)
    try:
        result = factor_braid_hom(spec, data)
    except Rejection as e:
        return report.factor_document(e), EXIT_NO
    return report.factor_document(result), EXIT_OK


def cmd_table(args):
    rows = [[tag, list(row)] for tag, row in enumerate_table(args.max_i, args.max_n, args.max_x)]
    return report.document("table", rows=rows, box=[args.max_i, args.max_n, args.max_x]), EXIT_OK


def cmd_verify(args):
    checks = tuple(args.checks.split(",")) if args.checks else SweepConfig.checks
    cfg = SweepConfig(
        samples=args.samples,
        seed=args.seed,
        max_exponent=args.max_exponent,
        max_twist_curves=args.max_twist_curves,
        max_word=args.max_word,
        schemas=tuple(args.sweep_schema or SweepConfig.schemas),
        checks=checks,
        workers=args.workers,
    )
    if args.replay:
        inst = replay(cfg, args.replay)
        result = SweepResult(SweepConfig(**{**cfg.to_json(), "samples": 1, "seed": int(args.replay.split(":")[0])}),
                             [inst])
        doc = report.sweep_document(result)
        doc["replay"] = inst.to_json()
    else:
        result = run_sweep(cfg)
        doc = report.sweep_document(result)
    return doc, EXIT_OK if result.ok else EXIT_NO


def cmd_canonicalize(args):
    c = _corpus(args)
    x = engine.tighten(parse_curve(c, args.curve))
    x = _min_rotation(x, args.unoriented)
    return report.document("canonical", curve=args.curve, canonical=_word(x), word=x.to_json()["word"],
                           length=len(x)), EXIT_OK


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="multitwist", description="Multitwists, intersection formulas and braid relations.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--schema", default="genus2", help="corpus entry name or path (default genus2)")
    common.add_argument("--format", choices=report.FORMATS, default="human")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("intersect", parents=[common], help="geometric and algebraic intersection of two curves")
    p.add_argument("curve1")
    p.add_argument("curve2")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("twist", parents=[common], help="image of a curve under a multitwist")
    p.add_argument("curve")
    p.add_argument("--twist", required=True, help="corpus multitwist name or id:n,id:n")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("x-function", parents=[common], help="crossing profile and X value of a curve")
    p.add_argument("curve")
    p.add_argument("--twist", required=True)
    p.add_argument("--measure", action="store_true", help="also compare the hidden formula with the engine")
    p.set_defaults(func=cmd_xfunction)

    for name, func, helptext in (
        ("check-braid", cmd_check_braid, "decide whether two multitwists satisfy the braid relation"),
        ("decompose", cmd_decompose, "canonical decomposition or refutation, with oracle certificate"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("request", nargs="?", help="JSON request file")
        p.add_argument("--ta")
        p.add_argument("--tb")
        p.add_argument("--no-oracle", action="store_true")
        p.add_argument("--orbit-cap", type=int, default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("factor-hom", parents=[common], help="factor a braid group representation into chains")
    p.add_argument("request", help="JSON file with n, images and intersections")
    p.set_defaults(func=cmd_factor_hom)

    p = sub.add_parser("table", parents=[common], help="regenerate the curve-type table")
    p.add_argument("--max-i", type=int, default=4)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-x", type=int, default=4)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify-formulas", parents=[common], help="seeded sweep comparing formulas with the engine")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--checks", help=f"comma separated subset of {','.join(CHECKS)}")
    p.add_argument("--sweep-schema", action="append", help="corpus entry to draw from (repeatable)")
    p.add_argument("--max-exponent", type=int, default=3)
    p.add_argument("--max-twist-curves", type=int, default=6)
    p.add_argument("--max-word", type=int, default=3)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--replay", metavar="SEED:INDEX", help="re-run a single instance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("canonicalize", parents=[common], help="tightened, rotation-normalized word of a curve")
    p.add_argument("curve")
    p.add_argument("--unoriented", action="store_true")
    p.set_defaults(func=cmd_canonicalize)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, code = args.func(args)
    except (InputError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"multitwist: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(report.render(doc, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
