"""Download daily GBP/USD and JPY/USD noon buying rates (FRED series
DEXUSUK and DEXJPUS) for 1990-2016 into data/.

Needs network access.  Files are saved byte-for-byte as served; FRED marks
missing days with "." (or an empty field), which ingestion drops and counts.
"""
import argparse
import sys
import urllib.request
from pathlib import Path

FRED = "https://fred.stlouisfed.org/graph/fredgraph.csv?id={sid}&cosd={start}&coed={end}"
SERIES = {"gbpusd": "DEXUSUK", "jpyusd": "DEXJPUS"}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "data")
    ap.add_argument("--start", default="1990-01-01")
    ap.add_argument("--end", default="2016-12-31")
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    for name, sid in SERIES.items():
        url = FRED.format(sid=sid, start=args.start, end=args.end)
        try:
            with urllib.request.urlopen(url, timeout=60) as resp:
                body = resp.read()
        except OSError as exc:
            print(f"{name}: download failed: {exc}", file=sys.stderr)
            return 1
        path = args.out / f"{name}.csv"
        path.write_bytes(body)
        lines = body.count(b"\n")
        print(f"{name}: {lines} lines -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
