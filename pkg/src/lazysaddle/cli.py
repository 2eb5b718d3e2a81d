"""Benchmark entry points: ``solve``, ``compare``, and ``check``.

Every run streams a per-iteration CSV trace (append-only, flushed each row) and
writes a JSON summary at exit.  Identical run specs reproduce traces
bit-for-bit except the wall_seconds column.  Every flag can also be supplied
through the environment as LAZYSADDLE_<FLAG> with dashes turned into
underscores, which is how grid drivers keep their command lines short.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import json
import math
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .core import CostWeights, OracleTally, tally_modeled_cost
from .data import extract_protected, normalize_features, parse_libsvm
from .linalg import schur_factorize
from .problems import fd_check, make_cubic, make_fairness, make_scsc
from .solvers import (
    RestartConfig,
    RunResult,
    SolverConfig,
    eg_solve,
    len_restart_solve,
    len_solve,
    npe_solve,
)

ENV_PREFIX = "LAZYSADDLE_"
TRACE_SCHEMA = "lazysaddle-trace v1"
TRACE_COLUMNS = [
    "iter",
    "wall_seconds",
    "grad_calls",
    "jac_calls",
    "factorizations",
    "tri_solves",
    "gamma",
    "field_norm",
    "dist_to_saddle",
    "modeled_cost",
]
THRESHOLDS = (1e-2, 1e-4, 1e-6, 1e-8)
RANK_THRESHOLD = 1e-6

SOLVE_OK_STATUSES = {"converged", "max_iters"}


@dataclass
class RunSpec:
    """Everything needed to reproduce one run: problem, solver, outputs."""

    problem: str = "cubic"
    n: int = 10
    seed: int = 0
    mu: float = 0.1
    data_path: str | None = None
    protected_index: int = 2
    beta: float = 0.5
    lam: float = 1e-4
    gamma_reg: float = 1e-4
    normalize: bool = True
    solver: str = "len"
    m: int = 1
    rho: object = "auto"  # float or the string "auto"
    reg: float | None = None
    alpha: float = 2.0
    stepsize: float | None = None
    eps: float = 1e-8
    max_iters: int = 1000
    crn_rel_tol: float = 1e-10
    eta0: float | None = None
    max_bisections: int = 64
    r0: float | None = None
    target_eps: float = 1e-12
    metric: str = "avg"
    out_dir: str = "runs"
    trace_path: str | None = None
    summary_path: str | None = None


def build_problem(spec: RunSpec):
    if spec.problem == "cubic":
        return make_cubic(spec.n, spec.seed)
    if spec.problem == "scsc":
        return make_scsc(spec.n, spec.mu, spec.seed)
    if spec.problem == "fairness":
        if not spec.data_path:
            raise ValueError("fairness needs --data pointing at a LIBSVM file")
        text = Path(spec.data_path).read_text()
        dataset = parse_libsvm(text)
        features, labels, protected = extract_protected(dataset, spec.protected_index)
        if spec.normalize:
            features = normalize_features(features)
        problem = make_fairness(
            features,
            labels,
            protected,
            beta=spec.beta,
            lam=spec.lam,
            gamma_reg=spec.gamma_reg,
        )
        # removing the protected column shrinks the feature count, so the
        # run header reports the source shape next to the working dim
        problem.source_shape = (len(dataset.labels), dataset.n_features)
        return problem
    raise ValueError(f"unknown problem kind {spec.problem!r}")


def problem_hash(problem) -> str:
    digest = hashlib.sha256()
    if hasattr(problem, "coupling"):
        digest.update(np.ascontiguousarray(problem.coupling).tobytes())
        digest.update(np.ascontiguousarray(problem.offset).tobytes())
    if hasattr(problem, "base"):
        digest.update(np.ascontiguousarray(problem.base.coupling).tobytes())
        digest.update(np.ascontiguousarray(problem.base.offset).tobytes())
        digest.update(repr(problem.mu).encode())
    if hasattr(problem, "features"):
        digest.update(np.ascontiguousarray(problem.features).tobytes())
        digest.update(np.ascontiguousarray(problem.labels).tobytes())
        digest.update(np.ascontiguousarray(problem.protected).tobytes())
    return digest.hexdigest()[:12]


def problem_header_fields(spec: RunSpec, problem) -> dict:
    fields = {
        "problem": spec.problem,
        "dim": problem.dim,
        "seed": spec.seed,
        "hash": problem_hash(problem),
    }
    source = getattr(problem, "source_shape", None)
    if source is not None:
        fields["source_rows"] = source[0]
        fields["source_features"] = source[1]
    return fields


def problem_tag(spec: RunSpec) -> str:
    if spec.problem == "cubic":
        return f"cubic{spec.n}_s{spec.seed}"
    if spec.problem == "scsc":
        return f"scsc{spec.n}_mu{spec.mu:g}_s{spec.seed}"
    stem = Path(spec.data_path).stem if spec.data_path else "data"
    return f"fairness_{stem}"


def solver_id_for(spec: RunSpec) -> str:
    if spec.solver == "eg":
        return f"eg_s{spec.stepsize:g}" if spec.stepsize is not None else "eg"
    if spec.solver == "npe":
        return "npe"
    suffix = f"_m{spec.m}"
    if spec.reg is not None:
        suffix += f"_reg{spec.reg:g}"
    elif isinstance(spec.rho, (int, float)):
        suffix += f"_rho{spec.rho:g}"
    return f"{spec.solver}{suffix}"


def resolve_reg(spec: RunSpec, problem) -> float:
    if spec.reg is not None:
        return float(spec.reg)
    if spec.rho == "auto":
        rho = getattr(problem, "rho", None)
        if rho is None:
            raise ValueError(
                "--rho auto needs a problem with a known curvature bound; "
                "this one has none, pass --rho VALUE or --reg VALUE"
            )
        return 3.0 * rho * spec.m
    return 3.0 * float(spec.rho) * spec.m


def build_solver_config(spec: RunSpec, problem) -> SolverConfig:
    reg = None
    if spec.solver in ("len", "npe", "len_restart"):
        reg = resolve_reg(spec, problem)
    return SolverConfig(
        m=spec.m,
        reg=reg,
        alpha=spec.alpha,
        max_iters=spec.max_iters,
        stop_tol=spec.eps,
        crn_rel_tol=spec.crn_rel_tol,
        eta0=spec.eta0,
        max_bisections=spec.max_bisections,
        stepsize=spec.stepsize,
    )


class TraceWriter:
    """Append-only CSV trace, flushed every row, with a versioned comment header."""

    def __init__(self, path, comment_fields: dict, weights: CostWeights, lead_columns=()):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.weights = weights
        self.lead_columns = tuple(lead_columns)
        self._fh = open(self.path, "w", newline="")
        self._fh.write(f"# {TRACE_SCHEMA}\n")
        rendered = " ".join(f"{k}={v}" for k, v in comment_fields.items())
        self._fh.write(f"# {rendered}\n")
        self._fh.write(",".join(self.lead_columns + tuple(TRACE_COLUMNS)) + "\n")
        self._fh.flush()

    def write(self, record, lead=()):
        tally = record.tally
        row = list(lead) + [
            str(record.t),
            repr(record.wall_seconds),
            str(tally.grad_calls),
            str(tally.jac_calls),
            str(tally.factorizations),
            str(tally.triangular_solves),
            repr(record.gamma),
            repr(record.field_norm),
            _dist_cell(record.dist_to_saddle),
            str(tally_modeled_cost(tally, self.weights)),
        ]
        self._fh.write(",".join(row) + "\n")
        self._fh.flush()

    def close(self):
        self._fh.close()


def _dist_cell(value) -> str:
    # blank cell when the problem has no known saddle
    return repr(value) if math.isfinite(value) else ""


def _json_safe(value):
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, (np.floating, float)):
        v = float(value)
        return v if math.isfinite(v) else None
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def _threshold_table(records, weights: CostWeights) -> dict:
    table = {}
    for threshold in THRESHOLDS:
        hit = next((r for r in records if r.field_norm <= threshold), None)
        table[f"{threshold:.0e}"] = (
            None
            if hit is None
            else {
                "iter": hit.t,
                "wall_seconds": hit.wall_seconds,
                "modeled_cost": tally_modeled_cost(hit.tally, weights),
            }
        )
    return table


def emit_summary(results: dict[str, tuple[RunResult, CostWeights]]) -> dict:
    """Per-solver digest plus a ranking by modeled cost to the 1e-6 threshold."""
    solvers = {}
    for solver_id, (result, weights) in results.items():
        best = min((r.field_norm for r in result.records), default=float("nan"))
        solvers[solver_id] = {
            "status": result.status,
            "diagnostic": result.diagnostic or None,
            "iterations": len(result.records),
            "tally": result.tally.as_dict(),
            "modeled_cost": tally_modeled_cost(result.tally, weights),
            "best_field_norm": best,
            "resolved": result.resolved,
            "thresholds": _threshold_table(result.records, weights),
        }

    rank_key_name = f"{RANK_THRESHOLD:.0e}"

    def rank_key(sid):
        entry = solvers[sid]["thresholds"][rank_key_name]
        return (entry is None, entry["modeled_cost"] if entry else 0, sid)

    return _json_safe(
        {
            "solvers": solvers,
            "ranking": sorted(solvers, key=rank_key),
            "ranked_by": f"modeled_cost at field_norm<={RANK_THRESHOLD:g}",
        }
    )


def _default_paths(spec: RunSpec, solver_id: str) -> tuple[Path, Path]:
    base = Path(spec.out_dir) / f"{problem_tag(spec)}_{solver_id}"
    trace = Path(spec.trace_path) if spec.trace_path else base.with_suffix(".csv")
    summary = Path(spec.summary_path) if spec.summary_path else base.with_suffix(".json")
    return trace, summary


def _dispatch(spec: RunSpec, problem, config: SolverConfig, z0, on_record) -> RunResult:
    if spec.solver == "len":
        return len_solve(problem, z0, config, on_record=on_record)
    if spec.solver == "npe":
        return npe_solve(problem, z0, config, on_record=on_record)
    if spec.solver == "eg":
        return eg_solve(problem, z0, config, on_record=on_record)
    if spec.solver == "len_restart":
        r0 = spec.r0
        if r0 is None:
            saddle = getattr(problem, "saddle", None)
            if saddle is None:
                raise ValueError("len_restart needs --r0 when the problem has no known saddle")
            r0 = float(np.linalg.norm(z0 - saddle))
        restart = RestartConfig(
            mu=getattr(problem, "strong_monotonicity", 0.0) or spec.mu,
            r0=r0,
            target_eps=spec.target_eps,
            inner=config,
        )
        return len_restart_solve(problem, z0, restart, on_record=on_record)
    raise ValueError(f"unknown solver kind {spec.solver!r}")


def run_solve(spec: RunSpec, problem=None) -> tuple[dict, int]:
    """Execute one RunSpec: stream the trace, write the summary, return both."""
    if problem is None:
        problem = build_problem(spec)
    solver_id = solver_id_for(spec)
    weights = CostWeights.for_problem(problem)
    config = build_solver_config(spec, problem)
    z0 = np.zeros(problem.dim)
    trace_path, summary_path = _default_paths(spec, solver_id)
    comment = {**problem_header_fields(spec, problem), "solver": solver_id}
    writer = TraceWriter(trace_path, comment, weights)
    try:
        result = _dispatch(spec, problem, config, z0, writer.write)
    finally:
        writer.close()

    summary = emit_summary({solver_id: (result, weights)})
    block = summary["solvers"][solver_id]
    final_block = {"metric": spec.metric}
    for name, point in (("avg", result.avg_point), ("last", result.last_point)):
        if point is None:
            final_block[f"field_norm_{name}"] = None
            final_block[f"dist_to_saddle_{name}"] = None
            continue
        final_block[f"field_norm_{name}"] = float(np.linalg.norm(problem.field(point)))
        saddle = getattr(problem, "saddle", None)
        final_block[f"dist_to_saddle_{name}"] = (
            float(np.linalg.norm(point - saddle)) if saddle is not None else None
        )
    chosen = final_block.get(f"field_norm_{spec.metric}")
    if chosen is None:
        chosen = final_block["field_norm_last"]
    final_block["field_norm"] = chosen
    block["final"] = _json_safe(final_block)
    block["trace_path"] = str(trace_path)

    problem_block = problem_header_fields(spec, problem)
    problem_block["kind"] = problem_block.pop("problem")
    problem_block["weights"] = {"n_data": weights.n_data, "dim": weights.dim}
    payload = {
        "schema": TRACE_SCHEMA,
        "problem": problem_block,
        **summary,
    }
    summary_path.parent.mkdir(parents=True, exist_ok=True)
    summary_path.write_text(json.dumps(payload, indent=2) + "\n")
    exit_code = 0 if result.status in SOLVE_OK_STATUSES else 2
    return payload, exit_code


def parse_variant(text: str) -> dict:
    """Turn ``len,m=10,rho=auto`` into RunSpec field overrides."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty solver variant")
    overrides: dict = {"solver": parts[0]}
    int_keys = {"m", "max_iters", "max_bisections", "seed"}
    for part in parts[1:]:
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"variant entry {part!r} is not key=value")
        key = key.strip()
        value = value.strip()
        if key == "rho":
            overrides[key] = "auto" if value == "auto" else float(value)
        elif key in int_keys:
            overrides[key] = int(value)
        else:
            overrides[key] = float(value)
    return overrides


def run_compare(base: RunSpec, variants: list[str], jobs: int = 1) -> tuple[dict, int]:
    """Run a grid of solver variants against one shared problem instance.

    Members run independently (possibly concurrently) and one failure does not
    abort the rest; the combined trace holds every member's rows keyed by
    (solver_id, iter) in grid order.
    """
    problem = build_problem(base)
    weights = CostWeights.for_problem(problem)
    specs = []
    seen = set()
    for text in variants:
        overrides = parse_variant(text)
        spec = replace(base, **overrides)
        solver_id = solver_id_for(spec)
        while solver_id in seen:
            solver_id += "_dup"
        seen.add(solver_id)
        specs.append((solver_id, spec))

    def run_member(item):
        solver_id, spec = item
        member_spec = replace(
            spec,
            trace_path=str(Path(spec.out_dir) / f"{problem_tag(spec)}_{solver_id}.csv"),
            summary_path=str(Path(spec.out_dir) / f"{problem_tag(spec)}_{solver_id}.json"),
        )
        config = build_solver_config(member_spec, problem)
        z0 = np.zeros(problem.dim)
        writer = TraceWriter(
            member_spec.trace_path,
            {**problem_header_fields(member_spec, problem), "solver": solver_id},
            weights,
        )
        try:
            result = _dispatch(member_spec, problem, config, z0, writer.write)
        except Exception as exc:  # isolate the member, keep the grid alive
            result = RunResult(
                status="error",
                final_point=z0,
                last_point=z0,
                avg_point=None,
                records=[],
                tally=OracleTally(),
                resolved={},
                diagnostic=str(exc),
            )
        finally:
            writer.close()
        return solver_id, result

    if jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_member, specs))
    else:
        outcomes = [run_member(item) for item in specs]

    results = {solver_id: (result, weights) for solver_id, result in outcomes}
    summary = emit_summary(results)
    combined_path = Path(base.out_dir) / f"{problem_tag(base)}_compare.csv"
    combined_path.parent.mkdir(parents=True, exist_ok=True)
    with open(combined_path, "w", newline="") as fh:
        fh.write(f"# {TRACE_SCHEMA}\n")
        header = {**problem_header_fields(base, problem), "members": len(outcomes)}
        fh.write("# " + " ".join(f"{k}={v}" for k, v in header.items()) + "\n")
        fh.write(",".join(("solver_id",) + tuple(TRACE_COLUMNS)) + "\n")
        for solver_id, result in outcomes:
            for record in result.records:
                tally = record.tally
                row = [
                    solver_id,
                    str(record.t),
                    repr(record.wall_seconds),
                    str(tally.grad_calls),
                    str(tally.jac_calls),
                    str(tally.factorizations),
                    str(tally.triangular_solves),
                    repr(record.gamma),
                    repr(record.field_norm),
                    _dist_cell(record.dist_to_saddle),
                    str(tally_modeled_cost(tally, weights)),
                ]
                fh.write(",".join(row) + "\n")

    problem_block = problem_header_fields(base, problem)
    problem_block["kind"] = problem_block.pop("problem")
    payload = {
        "schema": TRACE_SCHEMA,
        "problem": problem_block,
        "combined_trace": str(combined_path),
        **summary,
    }
    summary_path = Path(base.out_dir) / f"{problem_tag(base)}_compare.json"
    summary_path.write_text(json.dumps(payload, indent=2) + "\n")
    return payload, 0


def run_check(spec: RunSpec) -> int:
    """Derivative and invariant suite for one problem; exit 0 only if all pass."""
    problem = build_problem(spec)
    rng = np.random.default_rng(spec.seed)
    if spec.problem in ("cubic", "scsc"):
        x = 0.3 + 0.05 * rng.standard_normal(problem.dim_x)
        y = 0.2 * rng.standard_normal(problem.dim_y)
        z_probe = np.concatenate([x, y])
    else:
        raw = rng.standard_normal(problem.dim)
        z_probe = 0.5 * raw / max(1.0, float(np.linalg.norm(raw)))

    checks = []
    field_err, jac_err = fd_check(problem, z_probe)
    checks.append(("jacobian-vs-field", jac_err <= 1e-4, f"err={jac_err:.3e}"))
    if math.isnan(field_err):
        checks.append(("field-vs-objective", True, "skipped: no objective"))
    else:
        checks.append(("field-vs-objective", field_err <= 1e-5, f"err={field_err:.3e}"))

    saddle = getattr(problem, "saddle", None)
    if saddle is None:
        checks.append(("saddle-residual", True, "skipped: no known saddle"))
    else:
        residual = float(np.linalg.norm(problem.field(saddle)))
        bound = 1e-10 * (1.0 + float(np.linalg.norm(saddle)))
        checks.append(("saddle-residual", residual <= bound, f"residual={residual:.3e}"))

    if getattr(problem, "monotone", True):
        worst = 0.0
        for _ in range(5):
            jac = problem.jacobian(rng.standard_normal(problem.dim))
            sym_min = float(np.min(np.linalg.eigvalsh(0.5 * (jac + jac.T))))
            worst = min(worst, sym_min)
        checks.append(("monotonicity-probe", worst >= -1e-8, f"min sym eig={worst:.3e}"))
    else:
        checks.append(("monotonicity-probe", True, "skipped: empirical problem"))

    jac = problem.jacobian(z_probe)
    fact = schur_factorize(jac)
    unitary_err = float(
        np.linalg.norm(fact.unitary.conj().T @ fact.unitary - np.eye(fact.dim))
    )
    checks.append(("schur-reconstruction", unitary_err <= 1e-8 * fact.dim, f"unitary err={unitary_err:.3e}"))

    all_ok = True
    for name, ok, detail in checks:
        print(f"check {name}: {'PASS' if ok else 'FAIL'} ({detail})")
        all_ok = all_ok and ok
    return 0 if all_ok else 1


def _rho_value(text: str):
    return "auto" if text == "auto" else float(text)


def _add_problem_arguments(parser):
    parser.add_argument("--problem", choices=("cubic", "scsc", "fairness"), default="cubic")
    parser.add_argument("--n", type=int, default=10, help="size of the synthetic problems")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--mu", type=float, default=0.1, help="strong monotonicity shift (scsc)")
    parser.add_argument("--data", dest="data_path", default=None, help="LIBSVM file (fairness)")
    parser.add_argument("--protected-index", type=int, default=2)
    parser.add_argument("--beta", type=float, default=0.5)
    parser.add_argument("--lam", type=float, default=1e-4)
    parser.add_argument("--gamma-reg", type=float, default=1e-4)
    parser.add_argument("--no-normalize", dest="normalize", action="store_false")


def _add_solver_arguments(parser):
    parser.add_argument("--solver", choices=("len", "npe", "eg", "len_restart"), default="len")
    parser.add_argument("--m", type=int, default=1, help="iterations between factorizations")
    parser.add_argument("--rho", type=_rho_value, default="auto", help="curvature bound or 'auto'")
    parser.add_argument("--reg", type=float, default=None, help="step scale; overrides 3*rho*m")
    parser.add_argument("--alpha", type=float, default=2.0, help="band width; 1 is exact mode")
    parser.add_argument("--stepsize", type=float, default=None, help="eg stepsize")
    parser.add_argument("--eps", type=float, default=1e-8, help="stop once |F| falls below this")
    parser.add_argument("--max-iters", type=int, default=1000)
    parser.add_argument("--crn-rel-tol", type=float, default=1e-10)
    parser.add_argument("--eta0", type=float, default=None, help="fixed probe stepsize")
    parser.add_argument("--max-bisections", type=int, default=64)
    parser.add_argument("--r0", type=float, default=None, help="initial distance bound (restart)")
    parser.add_argument("--target-eps", type=float, default=1e-12, help="restart contraction target")
    parser.add_argument("--metric", choices=("avg", "last"), default="avg")
    parser.add_argument("--out-dir", default="runs")
    parser.add_argument("--trace", dest="trace_path", default=None)
    parser.add_argument("--summary", dest="summary_path", default=None)


def _apply_env_overrides(parser):
    for action in parser._actions:
        if not action.option_strings or action.dest == "help":
            continue
        env_key = ENV_PREFIX + action.dest.upper()
        if env_key not in os.environ:
            continue
        raw = os.environ[env_key]
        if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
            # the env var names the destination, so its truth value is the
            # destination value regardless of which direction the flag toggles
            action.default = raw.lower() in ("1", "true", "yes", "on")
        elif action.type is not None:
            action.default = action.type(raw)
        else:
            action.default = raw
        action.required = False


def _spec_from_args(args) -> RunSpec:
    fields = {
        name: getattr(args, name)
        for name in RunSpec.__dataclass_fields__
        if hasattr(args, name)
    }
    return RunSpec(**fields)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lazysaddle", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one solver, stream a trace, write a summary")
    _add_problem_arguments(solve)
    _add_solver_arguments(solve)
    solve.set_defaults(func=_cmd_solve)

    compare = sub.add_parser("compare", help="run a solver grid on one problem instance")
    _add_problem_arguments(compare)
    _add_solver_arguments(compare)
    compare.add_argument(
        "--run",
        action="append",
        dest="runs",
        default=None,
        help="solver variant like 'len,m=10,rho=auto'; repeatable",
    )
    compare.add_argument("--jobs", type=int, default=1)
    compare.set_defaults(func=_cmd_compare)

    check = sub.add_parser("check", help="derivative and invariant suite for a problem")
    _add_problem_arguments(check)
    check.set_defaults(func=_cmd_check)

    for sp in (parser, solve, compare, check):
        _apply_env_overrides(sp)
    return parser


def _cmd_solve(args) -> int:
    spec = _spec_from_args(args)
    try:
        payload, code = run_solve(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for solver_id, block in payload["solvers"].items():
        final = block.get("final", {})
        print(
            f"{solver_id}: {block['status']} iters={block['iterations']} "
            f"final|F|={final.get('field_norm')} cost={block['modeled_cost']}"
        )
        if block.get("diagnostic"):
            print(f"  diagnostic: {block['diagnostic']}", file=sys.stderr)
    return code


def _cmd_compare(args) -> int:
    spec = _spec_from_args(args)
    variants = args.runs or ["len,m=1", "len,m=10"]
    try:
        payload, code = run_compare(spec, variants, jobs=args.jobs)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for solver_id in payload["ranking"]:
        block = payload["solvers"][solver_id]
        entry = block["thresholds"][f"{RANK_THRESHOLD:.0e}"]
        cost = entry["modeled_cost"] if entry else None
        print(
            f"{solver_id}: {block['status']} iters={block['iterations']} "
            f"best|F|={block['best_field_norm']} cost@1e-6={cost}"
        )
    return code


def _cmd_check(args) -> int:
    spec = _spec_from_args(args)
    try:
        return run_check(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entrypoint():
    raise SystemExit(main())
