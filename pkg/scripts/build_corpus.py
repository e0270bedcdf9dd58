#!/usr/bin/env python3
"""Regenerate the shipped corpus files and check every stated property on the engine.

    python scripts/build_corpus.py            # write src/multitwist/corpus/*.json
    python scripts/build_corpus.py --check    # only verify, write nothing
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from multitwist.core import MultiTwist
from multitwist.corpus import Corpus, dump
from multitwist.surface import engine
from multitwist.surface.curve import EmbeddedCurve
from multitwist.surface.layout import check_essential
from multitwist.surface.schema import standard_schema

OUT = Path(__file__).resolve().parents[1] / "src" / "multitwist" / "corpus"


def chain_curves(schema, genus):
    """Duals ``a_i`` of ``y_i``, ``b_i`` of ``x_i``, and connectors ``g_i`` through ``x_i, x_{i+1}``."""
    lab = (lambda s, i: s) if genus == 1 else (lambda s, i: f"{s}{i}")
    curves = {}
    for i in range(1, genus + 1):
        curves[f"a{i}"] = EmbeddedCurve.from_labels(schema, [lab("y", i)])
        curves[f"b{i}"] = EmbeddedCurve.from_labels(schema, [lab("x", i)])
        if i < genus:
            curves[f"g{i}"] = EmbeddedCurve.from_labels(schema, [lab("x", i), lab("x", i + 1)])
    return curves


def chain_order(genus):
    order = []
    for i in range(1, genus + 1):
        order += [f"b{i}", f"a{i}"] + ([f"g{i}"] if i < genus else [])
    return order


def torus():
    s = standard_schema(1, "torus")
    curves = {
        # slope (p, q) as a horizontal / vertical pair: h crosses the vertical edge y
        "h": EmbeddedCurve.from_labels(s, ["y"]),
        "v": EmbeddedCurve.from_labels(s, ["x-"]),
        "d": EmbeddedCurve.from_labels(s, ["y", "x-"]),
        "e": EmbeddedCurve.from_labels(s, ["y", "x"]),
        "h2v": EmbeddedCurve.from_labels(s, ["y", "y", "x-"]),
    }
    return Corpus(
        "torus",
        s,
        {k: c.renamed(k) for k, c in curves.items()},
        ("h", "v"),
        ("h", "v"),
        {"twist_v": MultiTwist.of(("v", 1)), "twist_h": MultiTwist.of(("h", 1))},
        {"slopes": {"h": [1, 0], "v": [0, 1], "d": [1, 1], "e": [1, -1], "h2v": [2, 1]}},
    )


def genus2():
    s = standard_schema(2, "genus2")
    curves = chain_curves(s, 2)
    curves["s"] = EmbeddedCurve.from_labels(s, ["x1@1", "y1@1", "x1-@0", "y1-@0"])
    curves["y12"] = EmbeddedCurve.from_labels(s, ["y1", "y2"])
    # p1, p2 and b2 bound a pair of pants; b1 crosses p1 and p2 twice each
    curves["p1"] = EmbeddedCurve.from_labels(s, ["x1", "y1-@1", "y1-@0"])
    curves["p2"] = EmbeddedCurve.from_labels(s, ["x1", "y1-@1", "y1-@0", "x2"])
    families = [["b1", "g1", "b2"], ["a1", "a2", "s"], ["b1", "b2", "s"], ["a1", "b2"], ["g1"]]
    return Corpus(
        "genus2",
        s,
        {k: c.renamed(k) for k, c in curves.items()},
        tuple(chain_order(2)),
        (),
        {
            "chain_a": MultiTwist.of(("a1", 1)),
            "chain_b": MultiTwist.of(("b1", 1)),
            "far_b": MultiTwist.of(("y12", 1)),
            "bp_mixed": MultiTwist.of(("p1", -1), ("p2", 1)),
        },
        {
            "generators": chain_order(2) + ["s"],
            "disjoint_families": families,
            # mixed-sign case where the hidden formula overshoots the true value
            "formula_gaps": {"bp_mixed": {"curve": "b1", "X": 0, "formula": 4, "measured": 2}},
        },
    )


def figure1():
    s = standard_schema(5, "genus5-figure1")
    curves = chain_curves(s, 5)
    curves["d"] = curves.pop("a5")
    keep = [f"a{i}" for i in range(1, 5)] + [f"b{i}" for i in range(1, 5)] + ["d"]
    test = chain_order(5)
    test[test.index("a5")] = "d"
    twists = {
        "tA": MultiTwist.of(("a1", 1), ("a2", 1), ("a3", 1), ("a4", -1)),
        "tB": MultiTwist.of(("b1", 1), ("b2", 1), ("b3", 1), ("b4", -1)),
    }
    return Corpus(
        "figure1",
        s,
        {k: c.renamed(k) for k, c in curves.items()},
        tuple(test),
        (),
        twists,
        {"figure_curves": keep},
    )


def example23():
    # Genus three: c1 cuts off the first handle, c2 and c3 are duals in the
    # other two.  a runs through all three handles.
    s = standard_schema(3, "example23")
    curves = chain_curves(s, 3)
    curves["c1"] = EmbeddedCurve.from_labels(s, ["x1@1", "y1@1", "x1-@0", "y1-@0"])
    curves["c2"] = curves["b2"]
    curves["c3"] = curves["b3"]
    curves["a"] = EmbeddedCurve.from_labels(s, ["y1", "y2", "y3"]).reversed().canonical()
    return Corpus(
        "example23",
        s,
        {k: c.renamed(k) for k, c in curves.items()},
        tuple(chain_order(3)),
        (),
        {"tC": MultiTwist.of(("c1", 2), ("c2", -1), ("c3", 1))},
        {
            "expected": {"X": 2, "i_a_tCa": 8, "multiplicities": {"c1": 2, "c2": 1, "c3": 1}},
            "sweep_instances": [{"curve": "a", "twist": "tC"}],
        },
    )


def verify(c: Corpus) -> list[str]:
    problems = []
    for k, cur in c.curves.items():
        try:
            check_essential(cur)
        except Exception as e:  # report, keep going
            problems.append(f"{c.name}: curve {k}: {e}")
    if c.test_set and not engine.fills(c.tests()):
        problems.append(f"{c.name}: test set does not fill")
    for name, t in c.multitwists.items():
        ids = [r.id for r in t.curves]
        for i, x in enumerate(ids):
            for y in ids[i + 1:]:
                if engine.geometric_intersection(c.curves[x], c.curves[y]):
                    problems.append(f"{c.name}: {name} has intersecting curves {x}, {y}")
    for fam in c.extra.get("disjoint_families", []):
        try:
            engine.multicurve_layout([c.curves[k] for k in fam])
        except engine.NotDisjoint as e:
            problems.append(f"{c.name}: family {fam}: {e}")
    if c.name == "figure1":
        keep = c.extra["figure_curves"]
        for i, x in enumerate(keep):
            for y in keep[i + 1:]:
                want = int(x[0] != y[0] and x[0] in "ab" and y[0] in "ab" and x[1:] == y[1:])
                if engine.geometric_intersection(c.curves[x], c.curves[y]) != want:
                    problems.append(f"figure1: i({x},{y}) != {want}")
    for name, gap in c.extra.get("formula_gaps", {}).items():
        t, x = c.twist(name), c.curves[gap["curve"]]
        prof = engine.crossing_profile(x, t, c.curves)
        got = engine.geometric_intersection(x, engine.apply_multitwist(t, x, c.curves))
        if (sum(prof.arc_flags), got) != (gap["X"], gap["measured"]):
            problems.append(f"{c.name}: formula gap {name} not reproduced")
    if c.name == "example23":
        t = c.twist("tC")
        prof = engine.crossing_profile(c.curves["a"], t, c.curves)
        img = engine.apply_multitwist(t, c.curves["a"], c.curves)
        if sum(prof.arc_flags) != 2 or engine.geometric_intersection(c.curves["a"], img) != 8:
            problems.append("example23: X or i(a, tC a) off")
    return problems


BUILDERS = [torus, genus2, figure1, example23]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true")
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args(argv)
    bad = []
    for build in BUILDERS:
        c = build()
        bad += verify(c)
        if not args.check:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"{c.name}.json").write_text(dump(c))
            print(f"wrote {c.name}.json")
    for p in bad:
        print("PROBLEM", p)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
