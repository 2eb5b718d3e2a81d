#!/usr/bin/env python3
"""Benchmark the solver family on the fairness-regularized classification problem.

This problem has no closed-form curvature bound, so the step scale comes from
the documented grid {1, 10, 100} rather than rho.  Point --data at a LIBSVM
file (label then index:value pairs, 1-based indices); without one, a
deterministic synthetic dataset with the usual 270 x 13 clinical shape is
generated next to the outputs.
"""

import argparse
import json
import sys
from pathlib import Path

from lazysaddle import synthetic_fairness_text
from lazysaddle.cli import RunSpec, run_compare

REG_GRID = (1.0, 10.0, 100.0)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data", default=None, help="LIBSVM file; synthesized when omitted")
    parser.add_argument("--protected-index", type=int, default=2)
    parser.add_argument("--m", type=int, default=10)
    parser.add_argument("--eps", type=float, default=1e-6)
    parser.add_argument("--max-iters", type=int, default=400)
    parser.add_argument("--out-dir", default="runs/fairness")
    parser.add_argument("--jobs", type=int, default=2)
    args = parser.parse_args(argv)

    data_path = args.data
    if data_path is None:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        data_path = out_dir / "synthetic.libsvm"
        data_path.write_text(synthetic_fairness_text())
        print(f"no --data given, wrote synthetic stand-in to {data_path}")

    base = RunSpec(
        problem="fairness",
        data_path=str(data_path),
        protected_index=args.protected_index,
        eps=args.eps,
        max_iters=args.max_iters,
        out_dir=args.out_dir,
    )
    variants = [f"len,m={args.m},reg={reg:g}" for reg in REG_GRID]
    variants.append("eg,stepsize=0.5")
    payload, code = run_compare(base, variants, jobs=args.jobs)
    print(json.dumps({sid: payload["solvers"][sid]["status"] for sid in payload["ranking"]}, indent=2))
    print(f"ranking by {payload['ranked_by']}:")
    for rank, solver_id in enumerate(payload["ranking"], start=1):
        block = payload["solvers"][solver_id]
        entry = block["thresholds"]["1e-06"]
        cost = entry["modeled_cost"] if entry else "unreached"
        print(f"  {rank}. {solver_id}: best|F|={block['best_field_norm']:.3e} cost@1e-6={cost}")
    print(f"combined trace: {payload['combined_trace']}")
    return code


if __name__ == "__main__":
    sys.exit(main())
