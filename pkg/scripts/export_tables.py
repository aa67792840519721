#!/usr/bin/env python3
"""Export the standard artifact set for one model: coefficient profile,
curvature table and verification report.

    python scripts/export_tables.py --outdir out --m 1.0
"""
import argparse
import pathlib
import sys

from ahgeom.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="out")
    ap.add_argument("--m", type=float, default=1.0)
    ap.add_argument("--grid", type=int, default=1000)
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    common = ["--m", str(args.m), "--grid", str(args.grid)]

    jobs = (
        (["solve"], outdir / "profile.csv"),
        (["curvature"], outdir / "curvature.csv"),
        (["verify"], outdir / "verification.json"),
    )
    for cmd, path in jobs:
        print(f"-> {path}")
        code = cli_main(cmd + common + ["--output", str(path)])
        if code != 0:
            print(f"failed with exit {code}", file=sys.stderr)
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
