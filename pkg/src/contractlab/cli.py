"""Command-line front end.

Subcommands: analyze, contractivity, product, ergodicity, simulate,
decompose, reproduce-paper.  All reports are JSON (floats rendered at 12
significant digits so repeated runs are byte-identical); exit codes are
0 for success, 2 for input errors, 3 for internal numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import cml, io, products, reference
from .contractivity import (
    JacobiConvergenceError,
    RowSumError,
    contractivity_l2,
    contractivity_linf,
    contractivity_weighted_bound,
    decompose_affine,
    empirical_contractivity,
)
from .graphs import has_spanning_directed_tree, interaction_digraph, is_irreducible
from .matcore import delta, is_scrambling, is_stochastic, mu, row_sum_profile
from .projections import NormError, norm_from_name

log = logging.getLogger("contractlab")

EXIT_INPUT_ERROR = 2
EXIT_NUMERICAL_ERROR = 3


def _round12(value):
    """Render floats at 12 significant digits, recursively."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.12g}")
    if isinstance(value, np.ndarray):
        return [_round12(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {k: _round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round12(v) for v in value]
    return value


def _dump(doc, pretty: bool) -> str:
    return json.dumps(_round12(doc), indent=2 if pretty else None, sort_keys=True)


def _emit(doc, args, path=None) -> None:
    text = _dump(doc, args.pretty)
    target = path if path is not None else args.output
    if target:
        Path(target).write_text(text + "\n")
    else:
        print(text)


def _norm_from_args(args):
    weights = None
    if args.norm == "wl2":
        if not args.weights:
            raise io.InputError("--norm wl2 requires --weights")
        weights = io.parse_weights(args.weights)
    return norm_from_name(args.norm, weights)


def _analysis_report(path, zero_tol, row_sum_tol) -> dict:
    A = io.load_matrix(path, zero_tol)
    profile = row_sum_profile(A, row_sum_tol)
    G = interaction_digraph(A)
    tree, root = has_spanning_directed_tree(G)
    report = {
        "input": str(path),
        "n": A.n,
        "row_sums": profile.sums,
        "constant_row_sum": profile.is_constant,
        "r": profile.r,
        "stochastic": is_stochastic(A, row_sum_tol),
        "scrambling": is_scrambling(A),
        "mu": mu(A),
        "delta": delta(A),
        "spanning_tree": tree,
        "spanning_tree_root": root,
        "irreducible": is_irreducible(G),
        "digraph": G.to_json(),
    }
    if profile.is_constant:
        rinf = contractivity_linf(A, row_sum_tol)
        rl2 = contractivity_l2(A, row_sum_tol)
        report["c_linf"] = rinf.c
        report["c_l2"] = rl2.c
        report["classification"] = {
            "linf": "set-contractive" if rinf.is_set_contractive
                    else "set-nonexpansive" if rinf.is_set_nonexpansive else "expansive",
            "l2": "set-contractive" if rl2.is_set_contractive
                  else "set-nonexpansive" if rl2.is_set_nonexpansive else "expansive",
        }
    else:
        report["c_linf"] = None
        report["c_l2"] = None
        report["note"] = "row sums are not constant; coefficient formulas do not apply"
    return report


def cmd_analyze(args) -> int:
    paths = args.matrix
    if len(paths) == 1:
        _emit(_analysis_report(paths[0], args.zero_tol, args.row_sum_tol), args)
        return 0
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        reports = list(pool.map(
            lambda p: _analysis_report(p, args.zero_tol, args.row_sum_tol), paths))
    if args.output:
        outdir = Path(args.output)
        outdir.mkdir(parents=True, exist_ok=True)
        for path, report in zip(paths, reports):
            out = outdir / (Path(path).stem + ".analysis.json")
            out.write_text(_dump(report, args.pretty) + "\n")
    else:
        print(_dump(reports, args.pretty))
    return 0


def cmd_contractivity(args) -> int:
    A = io.load_matrix(args.matrix, args.zero_tol)
    norm = _norm_from_args(args)
    if norm.kind == "linf":
        rep = contractivity_linf(A, args.row_sum_tol)
    elif norm.kind == "l2":
        rep = contractivity_l2(A, args.row_sum_tol)
    elif norm.kind == "wl2":
        rep = contractivity_weighted_bound(A, norm.weights, args.row_sum_tol)
    else:
        rep = None  # l1: sampling only
    doc = {"input": str(args.matrix), "norm": args.norm}
    if rep is not None:
        doc.update(rep.to_json())
    if args.samples > 0 or rep is None:
        samples = args.samples if args.samples > 0 else 10000
        doc["empirical_lower_bound"] = empirical_contractivity(
            A, norm, samples=samples, seed=args.seed)
        doc["samples"] = samples
        doc["seed"] = args.seed
    _emit(doc, args)
    return 0


def cmd_product(args) -> int:
    seq = io.load_sequence(args.sequence, args.zero_tol)
    norm = _norm_from_args(args)
    c_exact, c_bound = products.product_contractivity_bound(seq, norm)
    c_values = [products.contractivity(m, norm).c for m in seq.items]
    conv = products.check_convergence_condition(c_values)
    full = products.product(seq, 0, len(seq.items) - 1)
    doc = {
        "input": str(args.sequence),
        "norm": args.norm,
        "length": len(seq.items),
        "c_exact": c_exact,
        "c_bound": c_bound,
        "per_item_c": c_values,
        "running_products": conv["running_products"],
        "product_numerically_zero": conv["converges_to_zero_over_horizon"],
        "product_scrambling": is_scrambling(full),
    }
    _emit(doc, args)
    return 0


def cmd_ergodicity(args) -> int:
    seq = io.load_sequence(args.sequence, args.zero_tol)
    norm = _norm_from_args(args)
    report = products.weak_ergodicity_diagnostic(
        seq, horizon=args.horizon, block_len=args.block_len, norm=norm)
    doc = {"input": str(args.sequence), "norm": args.norm}
    doc.update(report.to_json())
    _emit(doc, args)
    return 0


def cmd_simulate(args) -> int:
    try:
        config = json.loads(Path(args.config).read_text())
    except OSError as exc:
        raise io.InputError(f"{args.config}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise io.InputError(f"{args.config}: invalid JSON at line {exc.lineno}") from exc
    if not isinstance(config, dict):
        raise io.InputError(f"{args.config}: expected a JSON object")
    base = Path(args.config).parent
    try:
        if "sequence" in config:
            seq = io.load_sequence(base / config["sequence"], args.zero_tol)
        elif "matrix" in config:
            A = io.load_matrix(base / config["matrix"], args.zero_tol)
            seq = products.MatrixSequence(items=[A] * int(config.get("steps", args.steps)))
        else:
            raise io.InputError(f"{args.config}: field 'matrix' or 'sequence' required")
        map_spec = config.get("map")
        if map_spec is None:
            raise io.InputError(f"{args.config}: field 'map' required")
        mp = cml.make_map(map_spec)
        x0 = config.get("x0")
        if x0 is None:
            raise io.InputError(f"{args.config}: field 'x0' required")
        x0 = io.load_vector(base / x0) if isinstance(x0, str) else np.asarray(x0, float)
        steps = int(config.get("steps", args.steps))
        norm = norm_from_name(config.get("norm", args.norm),
                              config.get("weights"))
    except (ValueError, TypeError) as exc:
        if isinstance(exc, io.InputError):
            raise
        raise io.InputError(f"{args.config}: {exc}") from exc
    trace = cml.simulate(seq, mp, x0, steps, norm=norm, sync_tol=args.sync_tol)
    records = trace.to_records()
    trace_path = args.output or config.get("trace")
    if trace_path:
        with open(trace_path, "w") as fh:
            for rec in records:
                if args.full_state:
                    rec = dict(rec, x=trace.states[rec["k"]].tolist())
                fh.write(json.dumps(_round12(rec), sort_keys=True) + "\n")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("k,d,bound\n")
            for rec in records:
                bound = rec.get("bound", "")
                fh.write(f"{rec['k']},{rec['d']:.12g},"
                         f"{bound if bound == '' else format(bound, '.12g')}\n")
    summary = dict(trace.summary(), input=str(args.config))
    if summary["synchronized_at"] is None:
        summary["note"] = "not synchronized within horizon"
    print(_dump(summary, args.pretty))
    return 0


def cmd_decompose(args) -> int:
    A = io.load_matrix(args.matrix, args.zero_tol)
    x = io.load_vector(args.vector)
    try:
        dec = decompose_affine(A, x, args.row_sum_tol)
    except ValueError as exc:
        raise io.InputError(str(exc)) from exc
    residual = float(np.abs(dec.B.a @ x + dec.xstar - A.a @ x).max())
    doc = {
        "input": str(args.matrix),
        "B": dec.B.a,
        "xstar": dec.xstar,
        "B_scrambling": is_scrambling(dec.B),
        "B_stochastic": is_stochastic(dec.B),
        "residual_linf": residual,
    }
    _emit(doc, args)
    return 0


def cmd_reproduce(args) -> int:
    rows = reference.run_reference_checks()
    doc = {"checks": rows, "all_pass": all(r["pass"] for r in rows)}
    _emit(doc, args)
    return 0 if doc["all_pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contractlab",
        description="Set-contractivity analysis of constant row sum matrices "
                    "and coupled map lattice simulation")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    parser.add_argument("--output", help="write the report to a file instead of stdout")
    parser.add_argument("--zero-tol", type=float, default=1e-12,
                        help="structural-zero threshold")
    parser.add_argument("--row-sum-tol", type=float, default=1e-9,
                        help="constant row sum tolerance")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structural and coefficient report for matrices")
    p.add_argument("matrix", nargs="+")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("contractivity", help="coefficient under a chosen norm")
    p.add_argument("matrix")
    p.add_argument("--norm", choices=["linf", "l2", "l1", "wl2"], default="linf")
    p.add_argument("--weights", help="weight vector: file path or comma-separated list")
    p.add_argument("--samples", type=int, default=0,
                   help="also compute a sampled lower bound with this many samples")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_contractivity)

    p = sub.add_parser("product", help="coefficient of a matrix product vs the factor bound")
    p.add_argument("sequence", help="sequence spec file")
    p.add_argument("--norm", choices=["linf", "l2", "wl2"], default="linf")
    p.add_argument("--weights")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("ergodicity", help="finite-horizon weak-ergodicity diagnostic")
    p.add_argument("sequence")
    p.add_argument("--norm", choices=["linf", "l2"], default="linf")
    p.add_argument("--weights")
    p.add_argument("--horizon", type=int, default=100)
    p.add_argument("--block-len", type=int, default=None)
    p.set_defaults(func=cmd_ergodicity)

    p = sub.add_parser("simulate", help="run a coupled map lattice from a config file")
    p.add_argument("config")
    p.add_argument("--norm", choices=["linf", "l2", "l1", "wl2"], default="linf")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--sync-tol", type=float, default=1e-10)
    p.add_argument("--csv", help="also write a (k, d, bound) CSV")
    p.add_argument("--full-state", action="store_true",
                   help="include full state vectors in the trace")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("decompose", help="affine stochastic decomposition at a point")
    p.add_argument("matrix")
    p.add_argument("vector")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("reproduce-paper",
                       help="check the bundled reference values")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    level = os.environ.get("CONTRACTLAB_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (io.InputError, NormError, RowSumError, OSError) as exc:
        log.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except JacobiConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
