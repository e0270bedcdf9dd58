"""Report documents and their human / JSON renderings.

Every command builds a plain ``dict`` document tagged with :data:`SCHEMA` and a
``kind``; rendering is a pure function of that document, so identical inputs
give byte-identical output.
"""
from __future__ import annotations

import json
from typing import Any, Callable

from .braid import BraidDecomposition, Certificate, Factorization, NotBraided
from .sweep import SweepResult

SCHEMA = "multitwist-report/1"
FORMATS = ("human", "json")


def document(kind: str, **payload: Any) -> dict:
    return {"schema": SCHEMA, "kind": kind, **payload}


# -- document builders ----------------------------------------------------------------


def sweep_document(result: SweepResult) -> dict:
    return document(
        "sweep",
        config=result.config.to_json(),
        counts=result.counts(),
        ok=result.ok,
        failures=[i.to_json() for i in result.failures],
    )


def decision_document(result: BraidDecomposition | NotBraided, certificate: Certificate | None = None) -> dict:
    braided = isinstance(result, BraidDecomposition)
    doc = document("decision", verdict="braided" if braided else "not-braided")
    doc["decomposition" if braided else "witness"] = result.to_json()
    if certificate is not None:
        doc["oracle"] = {
            "braided": certificate.oracle,
            "agree": certificate.agree,
            "types": {k: {"tag": t.tag, "evidence": list(t.evidence)} for k, t in sorted(certificate.types.items())},
            "pairs_mapped": dict(sorted(certificate.pairs_mapped.items())),
        }
        if certificate.orbits:
            doc["oracle"]["orbits"] = dict(sorted(certificate.orbits.items()))
    return doc


def factor_document(result: Factorization | Exception) -> dict:
    if isinstance(result, Factorization):
        return document("factorization", ok=True, **result.to_json())
    return document("factorization", ok=False, rejection=type(result).__name__, detail=str(result),
                    flag=getattr(result, "flag", None))


# -- rendering --------------------------------------------------------------------------


def render(doc: dict, fmt: str = "human") -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt != "human":
        raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")
    return "\n".join(_HUMAN.get(doc["kind"], _generic)(doc)) + "\n"


def _twist_str(t: dict) -> str:
    comps = t["components"]
    return " ".join(f"d_{c}^{n}" for c, n in comps) if comps else "1"


def _generic(doc):
    for k in sorted(doc):
        if k not in ("schema", "kind"):
            yield f"{k}: {json.dumps(doc[k], sort_keys=True)}"


def _sweep(doc):
    cfg = doc["config"]
    yield f"sweep seed={cfg['seed']} samples={cfg['samples']} schemas={','.join(cfg['schemas'])}"
    yield f"{'check':<16}{'pass':>6}{'fail':>6}{'skip':>6}"
    for check, c in doc["counts"].items():
        yield f"{check:<16}{c['pass']:>6}{c['fail']:>6}{c['skip']:>6}"
    for f in doc["failures"]:
        bad = {k: v for k, v in f["checks"].items() if not v["ok"]}
        detail = f["error"] if "error" in f else json.dumps(bad, sort_keys=True)
        yield f"FAIL {f['token']} [{f['schema']}] {detail}"
    yield "all checks passed" if doc["ok"] else f"{len(doc['failures'])} failing instance(s)"


def _decision(doc):
    if "decomposition" not in doc and "witness" not in doc:
        yield doc["verdict"]
    elif doc["verdict"] == "braided":
        d = doc["decomposition"]
        yield f"braided: common part {_twist_str(d['common'])}, {len(d['pairs'])} pair(s)"
        for a, b, n in d["pairs"]:
            yield f"  {a} <-> {b}  exponent {n:+d}"
    else:
        w = doc["witness"]
        yield f"not braided: {w['reason']}"
        yield f"  residue A: {_twist_str(w['residue'][0])}"
        yield f"  residue B: {_twist_str(w['residue'][1])}"
        yield f"  common:    {_twist_str(w['common'])}"
    o = doc.get("oracle")
    if o:
        yield f"oracle: {'braided' if o['braided'] else 'not braided'} ({'agrees' if o['agree'] else 'DISAGREES'})"
        for k, t in o.get("types", {}).items():
            mapped = o["pairs_mapped"].get(k)
            yield f"  {k}: {t['tag']} (i, |n|, X) = {tuple(t['evidence'])}, mapped to partner: {mapped}"
        for k, v in o.get("orbits", {}).items():
            yield f"  orbit of {k}: {v if v is not None else 'over cap'}"


def _factorization(doc):
    if not doc["ok"]:
        yield f"rejected: {doc['rejection']}: {doc['detail']}"
        if doc.get("flag"):
            yield f"  flag: {doc['flag']}"
        return
    yield f"{len(doc['chains'])} chain(s), cyclic part {_twist_str(doc['cyclic'])}"
    for ch in doc["chains"]:
        yield f"  chain {' - '.join(ch['curves'])} sign {ch['sign']:+d}"


def _table(doc):
    yield f"{'type':<6}{'i(a,b)':>8}{'|n|':>6}{'X':>4}"
    for tag, (i, n, x) in doc["rows"]:
        yield f"{tag:<6}{i:>8}{'-' if n is None else n:>6}{x:>4}"


def _intersect(doc):
    yield f"i({doc['curves'][0]}, {doc['curves'][1]}) = {doc['geometric']}"
    yield f"algebraic = {doc['algebraic']}"


def _twist(doc):
    yield f"image of {doc['curve']} under {_twist_str(doc['twist'])}:"
    yield "  " + doc["image"]
    yield f"  edge crossings {doc['length']}"


def _xfun(doc):
    yield f"crossings of {doc['curve']}: {' '.join(doc['sequence']) or '(none)'}"
    yield f"arc flags: {' '.join(map(str, doc['arc_flags']))}"
    yield f"X = {doc['X']}"
    if "formula" in doc:
        yield f"hidden formula {doc['formula']}, measured {doc['measured']}"


def _canonical(doc):
    yield doc["canonical"]
    yield f"edge crossings {doc['length']}"


_HUMAN: dict[str, Callable[[dict], Any]] = {
    "sweep": _sweep,
    "decision": _decision,
    "factorization": _factorization,
    "table": _table,
    "intersect": _intersect,
    "twist": _twist,
    "x-function": _xfun,
    "canonical": _canonical,
}
