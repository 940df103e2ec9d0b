"""Run every benchmark suite and write one CSV per suite."""

import argparse
import time
from pathlib import Path

from subcount.bench import SUITES, run_bench
from subcount.estimator import EstimationConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--suite", action="append", choices=SUITES, help="repeatable; default all")
    a = ap.parse_args()

    out = Path(a.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cfg = EstimationConfig(eps=a.eps, seed=a.seed)
    for suite in a.suite or SUITES:
        t0 = time.perf_counter()
        res = run_bench(suite, cfg, quick=a.quick)
        path = out / f"{suite}.csv"
        path.write_text(res.to_csv())
        worst = max((r.rel_err for r in res.rows), default=0.0)
        print(f"{suite:<11} rows={len(res.rows)} max_rel_err={worst:.4f} "
              f"{time.perf_counter() - t0:.1f}s -> {path}")


if __name__ == "__main__":
    main()
