"""Command-line interface.

Subcommands:
  project   -- project a Hermitian matrix onto the (smoothed) state set
  basis     -- dump the tensorized two-level measurement basis as JSON
  simulate  -- generate measurement records for a stored state
  estimate  -- reconstruct a state from a measurement CSV
  distance  -- print all distances between two stored states
  bench     -- run a full sweep from a JSON config and write a summary CSV
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench as bench_mod
from .estimators import SvtLeastSquares, estimate, parse_estimator
from .matjson import read_matrix, write_matrix
from .metrics import distance_report
from .pauli import basis_to_json, build_pauli_basis
from .projection import project_density, project_density_smoothed
from .simulate import parse_noise_model, read_dataset_csv, simulate, write_dataset_csv


def _cmd_project(args) -> int:
    z = read_matrix(args.input)
    if args.delta > 0:
        out = project_density_smoothed(z, args.delta)
    else:
        out = project_density(z)
    write_matrix(args.output, out)
    return 0


def _cmd_basis(args) -> int:
    basis = build_pauli_basis(args.qubits)
    basis_to_json(basis, args.out)
    return 0


def _cmd_simulate(args) -> int:
    rho = read_matrix(args.state)
    basis = build_pauli_basis(args.qubits)
    model = parse_noise_model(args.model)
    data = simulate(rho, basis, args.n, model, args.seed)
    write_dataset_csv(data, args.out)
    return 0


def _cmd_estimate(args) -> int:
    basis = build_pauli_basis(args.qubits)
    data = read_dataset_csv(args.data, m=basis.m)
    spec = parse_estimator(args.method)
    result = estimate(data, basis, spec)
    if isinstance(spec, SvtLeastSquares) and not result.converged:
        print(
            f"warning: iterative solver hit the cap of {spec.max_iters} iterations "
            f"without meeting the stopping threshold",
            file=sys.stderr,
        )
    write_matrix(args.out, result.matrix)
    return 0


def _cmd_distance(args) -> int:
    a = read_matrix(args.a)
    b = read_matrix(args.b)
    p_grid = [bench_mod.parse_p(tok) for tok in args.p.split(",") if tok.strip()]
    report = distance_report(a, b, p_grid)
    header = [f"schatten_{bench_mod.format_p(p)}" for p in p_grid]
    values = [repr(report.schatten[float(p)]) for p in p_grid]
    header += ["bures_sq", "fidelity", "kl"]
    values += [repr(report.bures_sq), repr(report.fidelity), repr(report.kl)]
    print(",".join(header))
    print(",".join(values))
    return 0


def _cmd_bench(args) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            obj = json.load(fh)
        config = bench_mod.config_from_obj(obj)
    except (OSError, json.JSONDecodeError, bench_mod.ConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    rows = bench_mod.run_sweep(config, threads=args.threads, median=args.median)
    bench_mod.write_summary_csv(rows, args.out, timing=args.timing)
    if any(row.errors > 0 for row in rows):
        print("warning: some trials failed; see the errors column", file=sys.stderr)
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mindist-tomo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="project a Hermitian matrix onto the state set")
    p.add_argument("--input", required=True)
    p.add_argument("--delta", type=float, default=0.0,
                   help="smoothing level in [0, 1); 0 gives the plain projection")
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("basis", help="dump the measurement basis as JSON")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("simulate", help="generate measurement records")
    p.add_argument("--state", required=True)
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--model", required=True,
                   help="noiseless | gaussian:<sigma> | pauli:<repeats>")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("estimate", help="reconstruct a state from measurement CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--method", required=True,
                   help="mindist | smoothed[:<delta>|auto] | svt | raw")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("distance", help="print distances between two states")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--p", default="1,2,inf", help="comma-separated Schatten orders")
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("bench", help="run a sweep from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--median", action="store_true",
                   help="report medians instead of means")
    p.add_argument("--timing", action="store_true",
                   help="record wall times (breaks byte-level reproducibility)")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
