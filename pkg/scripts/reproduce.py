"""Outlier counts on the two exchange-rate files and their sensitivity to
the quantile rule, the fence multiplier and the variable transformed.

Prints a markdown report (paste into REPRODUCTION.md).
"""
import argparse
import sys
from pathlib import Path

import numpy as np

from seqprofile import BankCatalog, BankEntry, IngestSpec, TimeSeries, box_stats, ingest, profile, rank_bank
from seqprofile.bank import RANK_KEYS

TARGETS = {"gbpusd": (639, 6135), "jpyusd": (24, 5000)}


def transforms(s):
    v = s.values
    yield "level", s
    yield "diff", TimeSeries(s.id, s.timestamps[1:], np.diff(v))
    yield "log-return", TimeSeries(s.id, s.timestamps[1:], np.diff(np.log(v)))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--data", type=Path, default=Path(__file__).resolve().parents[1] / "data")
    args = ap.parse_args(argv)

    loaded = {}
    for name in TARGETS:
        path = args.data / f"{name}.csv"
        if not path.exists():
            print(f"missing {path}; run scripts/fetch_fx.py first", file=sys.stderr)
            return 1
        loaded[name] = ingest(IngestSpec(path, 0, 1), series_id=name)

    print("| dataset | rows read | kept | dropped | target |")
    print("|---|---|---|---|---|")
    for name, (s, rep) in loaded.items():
        c, n = TARGETS[name]
        print(f"| {name} | {rep.rows_read} | {rep.rows_kept} | {rep.rows_dropped} | {c} of {n} |")

    print("\n| dataset | variable | rule | k=1.0 | k=1.5 | k=2.0 | k=3.0 |")
    print("|---|---|---|---|---|---|---|")
    for name, (s, _) in loaded.items():
        for label, t in transforms(s):
            for rule in ("interpolate", "tukey_hinge"):
                counts = [box_stats(t, k, rule).outlier_count for k in (1.0, 1.5, 2.0, 3.0)]
                print(f"| {name} | {label} | {rule} | " + " | ".join(map(str, counts)) + " |")

    cat = BankCatalog()
    for name, (s, rep) in loaded.items():
        cat.add(BankEntry(s.source, rep, profile(s)))
    print("\n| rank key | order |")
    print("|---|---|")
    for key in RANK_KEYS:
        print(f"| {key} | {', '.join(rank_bank(cat, key))} |")
    return 0


if __name__ == "__main__":
    sys.exit(main())
