"""Command-line interface: ``lowrank-cc gen|prep|cluster|eval|compare``.

Exit codes: 0 success, 1 runtime error, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import io
from .baselines import kmeans, pivot
from .core import as_weights, cc_objective, vp_objective
from .dataprep import discarded_spectrum_error, gen_gaussian, gen_planted, lowrank_psd_factor, prepare, shift_diagonal_psd
from .evaluate import attribute_cohesion, compare_report, pair_accuracy
from .exact import brute_force, rank1_psd_solve, rank2_psd_solve
from .zonotope import zonocc

log = logging.getLogger("lowrank_cc")

METHODS = ("zonocc", "rank1", "rank2", "brute", "pivot", "kmeans")


class UsageError(Exception):
    pass


def sidecar_path(out: Path) -> Path:
    return out.with_name(out.stem + ".planted.json")


def cmd_gen(args) -> int:
    out = Path(args.out)
    if args.kind == "planted":
        inst = gen_planted(args.d, args.n, args.eps, args.seed)
        io.write_factors(out, inst.factors)
        V = inst.factors
        side = sidecar_path(out)
        io.write_clustering(
            side, inst.planted,
            objective_vp=vp_objective(V, inst.planted),
            objective_cc=cc_objective(V @ V.T, inst.planted),
            epsilon=inst.epsilon, k_true=inst.k_true, seed=args.seed,
        )
        print(f"wrote {out} and {side}")
    else:
        n = 60 if args.n is None else args.n
        io.write_factors(out, gen_gaussian(n, args.d, args.seed))
        print(f"wrote {out}")
    return 0


def cmd_prep(args) -> int:
    table = io.read_timeseries(args.input)
    if args.rank >= table.n:
        raise UsageError(f"--rank must be below the number of series ({table.n})")
    A = prepare(table, alpha=args.alpha, smooth=not args.skip_smooth, detrend=not args.skip_detrend)
    if args.shift_diagonal:
        A = shift_diagonal_psd(A)
    V = lowrank_psd_factor(A, args.rank)
    io.write_factors(args.out, V)
    corr_out = args.corr_out or str(Path(args.out).with_name(Path(args.out).stem + ".corr.csv"))
    io.write_matrix(corr_out, A)
    err = float(np.linalg.norm(A - V @ V.T))
    log.info("rank %d factor: |A - VV^T|_F = %.12g, discarded-eigenvalue formula = %.12g",
             V.shape[1], err, discarded_spectrum_error(A, args.rank))
    print(f"wrote {args.out} ({V.shape[0]}x{V.shape[1]}) and {corr_out}")
    return 0


def _load_input(args):
    X = io.read_matrix(args.input)
    if args.matrix:
        A = as_weights(X)
        return None, A
    if args.center:
        X = X - X.mean(axis=0)
    return X, None


def cmd_cluster(args) -> int:
    method = args.method
    if args.matrix and method not in ("pivot", "brute"):
        raise UsageError(f"--method {method} needs a factor matrix, not --matrix input")
    V, A = _load_input(args)
    if method == "rank1" and V.shape[1] != 1:
        raise UsageError(f"--method rank1 needs a 1-column factor file, got {V.shape[1]} columns")
    if method == "rank2" and V.shape[1] != 2:
        raise UsageError(f"--method rank2 needs a 2-column factor file, got {V.shape[1]} columns")
    if method == "kmeans" and args.k is None:
        raise UsageError("--method kmeans needs --k")

    start = time.perf_counter()
    if method == "zonocc":
        C = zonocc(V, args.iters, seed=args.seed, threads=args.threads).clustering
    elif method == "rank1":
        C = rank1_psd_solve(V[:, 0])
    elif method == "rank2":
        C, _ = rank2_psd_solve(V, threads=args.threads)
    elif method == "brute":
        C, _ = brute_force(A) if A is not None else brute_force(V=V)
    elif method == "pivot":
        C, _ = pivot(A if A is not None else V @ V.T, args.restarts, args.seed)
    else:
        C = kmeans(V, args.k, args.restarts, args.seed)
    seconds = time.perf_counter() - start

    W = A if A is not None else V @ V.T
    obj_vp = vp_objective(V, C) if V is not None else None
    obj_cc = cc_objective(W, C)
    io.write_clustering(args.out, C, obj_vp, obj_cc, method=method, seconds=seconds, seed=args.seed)
    print(f"{method}: k={C.k} objective_cc={obj_cc:.10g}"
          + (f" objective_vp={obj_vp:.10g}" if obj_vp is not None else "")
          + f" ({seconds:.3f}s) -> {args.out}")
    return 0


def cmd_eval(args) -> int:
    C, _ = io.read_clustering(args.clustering)
    if args.reference is None and args.attributes is None:
        raise UsageError("eval needs --reference and/or --attributes")
    report = {"n": C.n, "k": C.k}
    if args.reference:
        ref, _ = io.read_clustering(args.reference)
        report["pair_accuracy"] = pair_accuracy(C, ref)
        print(f"pair accuracy: {report['pair_accuracy']:.6f}")
    if args.attributes:
        _, cols = io.read_attributes(args.attributes)
        rows = []
        for name, values in cols.items():
            row = {"attribute": name, "cohesion": attribute_cohesion(C, values)}
            row["none"] = attribute_cohesion(np.zeros(C.n, dtype=int), values)
            rows.append(row)
        report["cohesion"] = rows
        width = max([len("attribute")] + [len(r["attribute"]) for r in rows])
        print(f"{'attribute'.ljust(width)}  {'clustering':>10}  {'None':>10}")
        for r in rows:
            print(f"{r['attribute'].ljust(width)}  {r['cohesion']:10.4f}  {r['none']:10.4f}")
    if args.out:
        Path(args.out).write_text(json.dumps(report, indent=2) + "\n")
    return 0


def cmd_compare(args) -> int:
    if (args.matrix is None) == (args.factors is None):
        raise UsageError("compare needs exactly one of --matrix or --factors")
    V = io.read_factors(args.factors) if args.factors else None
    A = io.read_matrix(args.matrix) if args.matrix else V @ V.T
    results, seconds = {}, {}
    for path in args.clusterings:
        C, rec = io.read_clustering(path)
        name = rec.get("method") or Path(path).stem
        if name in results:
            name = Path(path).stem
        results[name] = C
        if rec.get("seconds") is not None:
            seconds[name] = rec["seconds"]
    report = compare_report(A, V, results, seconds)
    sys.stdout.write(report.to_text())
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lowrank-cc", description="Low-rank correlation clustering toolkit")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a synthetic factor matrix")
    g.add_argument("kind", choices=["planted", "gaussian"])
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--n", type=int, default=None, help="items (planted: 10d, gaussian: 60)")
    g.add_argument("--eps", type=float, default=0.15)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True, help="factor CSV path; planted labels go to <stem>.planted.json")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("prep", help="time-series CSV -> correlation matrix -> low-rank factors")
    r.add_argument("input")
    r.add_argument("--alpha", type=float, default=0.5)
    r.add_argument("--rank", type=int, required=True)
    r.add_argument("--out", required=True, help="factor CSV path")
    r.add_argument("--corr-out", default=None, help="correlation CSV path (default <stem>.corr.csv)")
    r.add_argument("--skip-smooth", action="store_true")
    r.add_argument("--skip-detrend", action="store_true")
    r.add_argument("--shift-diagonal", action="store_true")
    r.set_defaults(func=cmd_prep)

    c = sub.add_parser("cluster", help="run one clustering method")
    c.add_argument("input", help="factor CSV, or similarity matrix CSV with --matrix")
    c.add_argument("--method", choices=METHODS, required=True)
    c.add_argument("--matrix", action="store_true", help="input is an n x n similarity matrix")
    c.add_argument("--center", action="store_true", help="subtract the mean row from the factors")
    c.add_argument("--iters", type=int, default=50000)
    c.add_argument("--restarts", type=int, default=1000)
    c.add_argument("--k", type=int, default=None)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--threads", type=int, default=1)
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_cluster)

    e = sub.add_parser("eval", help="pair accuracy and attribute cohesion")
    e.add_argument("clustering")
    e.add_argument("--reference", default=None)
    e.add_argument("--attributes", default=None)
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_eval)

    m = sub.add_parser("compare", help="objective table for several clusterings")
    m.add_argument("clusterings", nargs="+")
    m.add_argument("--matrix", default=None)
    m.add_argument("--factors", default=None)
    m.add_argument("--out", default=None)
    m.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
