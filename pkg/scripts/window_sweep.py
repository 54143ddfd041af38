"""Sensitivity of the windowed series to the window length.

Simulates one match and reports, for each window length, how many
windows there are and the spread of each metric across them.

    python scripts/window_sweep.py --scenario domination --seed 1 --lengths 5 10 15 20 30
"""

from __future__ import annotations

import argparse
import statistics

from passnet.metrics import METRICS, series
from passnet.synth import SCENARIOS, scenario, simulate
from passnet.timeline import PeriodGroup


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scenario", choices=sorted(SCENARIOS), default="disruption")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--lengths", type=int, nargs="+", default=[5, 10, 15, 20, 30])
    args = ap.parse_args()

    log = simulate(scenario(args.scenario, args.seed))
    print("length  windows  " + "  ".join(f"{m + ' mean/sd':>22}" for m in METRICS))
    for length in args.lengths:
        cells = []
        n = 0
        for metric in METRICS:
            vals = series(log, PeriodGroup.REGULATION, metric, length=length).values
            n = len(vals)
            sd = statistics.stdev(vals) if len(vals) > 1 else 0.0
            cells.append(f"{statistics.fmean(vals) if vals else 0.0:>12.4f} /{sd:>8.4f}")
        print(f"{length:>6}  {n:>7}  " + "  ".join(cells))


if __name__ == "__main__":
    main()
