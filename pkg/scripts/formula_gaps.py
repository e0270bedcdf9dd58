#!/usr/bin/env python3
"""List sweep instances where the hidden formula disagrees with the engine.

For each one, print the exponents, i(a, c_j), whether c_j is null-homologous,
and the gap (formula minus measured).  All gaps found so far have mixed signs.
"""
from __future__ import annotations

import argparse

from multitwist.sweep import SweepConfig, draw_instance, run_sweep
from multitwist.surface import engine


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)
    cfg = SweepConfig(samples=args.samples, seed=args.seed, checks=("hidden",), workers=args.workers)
    result = run_sweep(cfg)
    cache: dict = {}
    gaps = [r for r in result.instances if not r.ok]
    for r in gaps:
        if r.error:
            print(r.token, "error", r.error)
            continue
        inst = draw_instance(cfg, r.index, cache)
        hb = engine.homology_basis(inst.a.schema)
        rows = [(n, engine.geometric_intersection(inst.a, c), hb.class_of(c).is_zero()) for c, n in inst.twist]
        h = r.results["hidden"]
        mixed = len({n > 0 for n, i, _ in rows if i}) > 1
        print(f"{r.token} gap {h['predicted'] - h['measured']} X={h['X']} mixed={mixed} (n, i, separating)={rows}")
    print(f"{len(gaps)} of {len(result.instances)} instances disagree")
    return 0


if __name__ == "__main__":
    main()
