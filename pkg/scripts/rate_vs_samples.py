#!/usr/bin/env python3
"""Sample-size scaling of the projected estimator's trace error.

Sweeps n over powers of two at fixed dimension and rank, fits the log-log
slope of the mean trace-norm error per estimator, and writes the summary
CSV.  The theoretical decay is n^(-1/2); the fitted slope approaches that
from above as the grid moves out of the saturation regime.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from mindist_tomo.bench import (  # noqa: E402
    config_from_obj,
    fit_loglog_slope,
    run_sweep,
    write_summary_csv,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--qubits", type=int, default=4)
    parser.add_argument("--rank", type=int, default=2)
    parser.add_argument("--replications", type=int, default=50)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=20240901)
    parser.add_argument("--out", default="rate_vs_samples.csv")
    args = parser.parse_args()

    n_grid = [2**e for e in range(12, 17)]
    config = config_from_obj({
        "qubits_grid": [args.qubits],
        "rank_grid": [args.rank],
        "n_grid": n_grid,
        "model": "pauli:1",
        "estimators": ["mindist", "svt"],
        "p_grid": [1, 2, "inf"],
        "replications": args.replications,
        "master_seed": args.seed,
    })
    rows = run_sweep(config, threads=args.threads)
    write_summary_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")

    for estimator in ("mindist", "svt"):
        points = [(row.n, row.mean_error) for row in rows
                  if row.estimator == estimator and row.metric == "1"]
        slope, _ = fit_loglog_slope(points)
        print(f"{estimator}: trace-error slope vs n = {slope:.3f} (theory -0.5)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
