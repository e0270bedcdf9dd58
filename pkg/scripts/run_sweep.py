#!/usr/bin/env python3
"""Run the acceptance-size formula sweep and write its JSON report.

    python scripts/run_sweep.py --samples 500 --seed 0 --out sweep.json
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from multitwist import report
from multitwist.sweep import CHECKS, SweepConfig, run_sweep


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--checks", default=",".join(CHECKS))
    ap.add_argument("--out", type=Path)
    args = ap.parse_args(argv)
    cfg = SweepConfig(samples=args.samples, seed=args.seed, workers=args.workers,
                      checks=tuple(args.checks.split(",")))
    t0 = time.perf_counter()
    result = run_sweep(cfg)
    doc = report.sweep_document(result)
    sys.stdout.write(report.render(doc, "human"))
    print(f"elapsed {time.perf_counter() - t0:.1f}s")
    if args.out:
        args.out.write_text(report.render(doc, "json"))
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
