#!/usr/bin/env python3
"""Run the default verification campaign and write the report file.

Equivalent to `harmap verify` with a chosen seed/output, kept as a script so
the campaign is easy to tweak in place (suite list, corpus size, Monte Carlo
resolution) while experimenting.
"""

import argparse
import sys
import time

from harmap.cli import default_config, run_config, _write_reports
from harmap.report import FAIL, HYPOTHESIS_VIOLATED, PASS


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--out", default="harmap-reports.jsonl")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    args = ap.parse_args()

    cfg = default_config(seed=args.seed, output_path=args.out, output_format=args.format)
    t0 = time.perf_counter()
    reports, counts = run_config(cfg)
    elapsed = time.perf_counter() - t0
    _write_reports(reports, cfg.output_path, cfg.output_format)
    print(
        f"{len(reports)} checks in {elapsed:.1f}s: {counts[PASS]} pass, "
        f"{counts[FAIL]} fail, {counts[HYPOTHESIS_VIOLATED]} hypothesis-violated"
    )
    print(f"report: {cfg.output_path}")
    return 1 if counts[FAIL] else 0


if __name__ == "__main__":
    sys.exit(main())
