#!/usr/bin/env python3
"""Benchmark the solver family on the synthetic cubic-coupling problem.

Runs the laziness grid (m = 1, 5, 10), the per-iteration refactorizing
baseline, and extragradient for a few stepsizes, then prints the modeled-cost
ranking.  Traces and summaries land under --out-dir.
"""

import argparse
import json
import sys

from lazysaddle.cli import RunSpec, run_compare

VARIANTS = [
    "npe,rho=auto",
    "len,m=1,rho=auto",
    "len,m=5,rho=auto",
    "len,m=10,rho=auto",
    "eg,stepsize=0.5",
    "eg,stepsize=0.1",
]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=100)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--eps", type=float, default=1e-8)
    parser.add_argument("--max-iters", type=int, default=2000)
    parser.add_argument("--out-dir", default="runs/cubic")
    parser.add_argument("--jobs", type=int, default=2)
    args = parser.parse_args(argv)

    base = RunSpec(
        problem="cubic",
        n=args.n,
        seed=args.seed,
        eps=args.eps,
        max_iters=args.max_iters,
        out_dir=args.out_dir,
    )
    payload, code = run_compare(base, VARIANTS, jobs=args.jobs)
    print(json.dumps({sid: payload["solvers"][sid]["status"] for sid in payload["ranking"]}, indent=2))
    print(f"ranking by {payload['ranked_by']}:")
    for rank, solver_id in enumerate(payload["ranking"], start=1):
        entry = payload["solvers"][solver_id]["thresholds"]["1e-06"]
        cost = entry["modeled_cost"] if entry else "unreached"
        print(f"  {rank}. {solver_id}: cost@1e-6={cost}")
    print(f"combined trace: {payload['combined_trace']}")
    return code


if __name__ == "__main__":
    sys.exit(main())
