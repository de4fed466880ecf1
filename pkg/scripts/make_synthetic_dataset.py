#!/usr/bin/env python3
"""Generate a seeded synthetic input dataset (five CSV files).

Example:
    python3 scripts/make_synthetic_dataset.py out/data --seed 7 \
        --areas 9 --universities 60
"""

from __future__ import annotations

import argparse
from pathlib import Path

from uniprod.synthetic import write_synthetic_dataset


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out_dir", type=Path,
                        help="directory to write the five CSV files into")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--areas", type=int, default=9,
                        help="number of disciplinary areas (default 9)")
    parser.add_argument("--universities", type=int, default=60,
                        help="number of universities (default 60)")
    parser.add_argument("--years", default="2001-2003",
                        help="output year range, e.g. 2001-2003")
    parser.add_argument("--pubs-per-staff-year", type=float, default=0.6,
                        help="mean publication intensity (default 0.6)")
    args = parser.parse_args(argv)

    lo, _, hi = args.years.partition("-")
    years = tuple(range(int(lo), int(hi or lo) + 1))

    root = write_synthetic_dataset(
        args.out_dir, seed=args.seed, n_areas=args.areas,
        n_universities=args.universities, years=years,
        pubs_per_staff_year=args.pubs_per_staff_year,
    )
    for name in ("staff", "publications", "journals", "funding",
                 "affiliations"):
        path = root / f"{name}.csv"
        rows = sum(1 for _ in open(path, encoding="utf-8")) - 1
        print(f"{path}: {rows} rows")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
