"""Build a bank of synthetic series with known spike counts, save it and
print the ranking under every key."""
import argparse
from pathlib import Path

from seqprofile import BankCatalog, BankEntry, IngestReport, rank_bank, save_catalog
from seqprofile.bank import RANK_KEYS, profile
from seqprofile.synthetic import sine, spiked_sine


def build():
    cat = BankCatalog()
    series = [spiked_sine(2000, k, seed=k, id=f"spiked-{k}")[0] for k in (0, 3, 10, 50)]
    series += [sine(2000, 50, noise=0.3, seed=1, id="noisy-sine"), sine(2000, 50, id="clean-sine")]
    for s in series:
        cat.add(BankEntry("synthetic", IngestReport(len(s), len(s), 0, {}), profile(s)))
    return cat


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("synthetic_bank.json"))
    args = ap.parse_args()
    cat = build()
    save_catalog(cat, args.out)
    for key in RANK_KEYS:
        print(f"{key:17s} {' > '.join(rank_bank(cat, key))}")
    print(f"saved {len(cat)} entries to {args.out}")


if __name__ == "__main__":
    main()
