"""Disruption vs domination presets over many seeds.

Prints per-scenario averages of the windowed metrics and the paired
win rate of domination over disruption.

    python scripts/contrast_experiment.py --seeds 200
"""

from __future__ import annotations

import argparse
import statistics

from passnet.metrics import extract_chains, series
from passnet.synth import scenario, simulate
from passnet.timeline import PeriodGroup


def summarize(log):
    chains = extract_chains(log)
    out = {
        "chain_len": statistics.fmean(c.length for c in chains),
        "pace": len(log) / 90,
        "def_share": statistics.fmean(e.zone_from <= 4 for e in log.events),
    }
    for metric in ("clustering", "density"):
        out[metric] = statistics.fmean(series(log, PeriodGroup.REGULATION, metric).values)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=100)
    args = ap.parse_args()

    rows = {name: [] for name in ("disruption", "domination")}
    for seed in range(args.seeds):
        for name in rows:
            rows[name].append(summarize(simulate(scenario(name, seed))))

    keys = list(rows["disruption"][0])
    print(f"{'scenario':<12}" + "".join(f"{k:>12}" for k in keys))
    for name, runs in rows.items():
        means = [statistics.fmean(r[k] for r in runs) for k in keys]
        print(f"{name:<12}" + "".join(f"{v:>12.4f}" for v in means))
    for k in keys:
        wins = sum(a[k] > b[k] for a, b in zip(rows["domination"], rows["disruption"]))
        print(f"domination > disruption on {k}: {wins}/{args.seeds}")


if __name__ == "__main__":
    main()
