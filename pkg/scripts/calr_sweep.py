#!/usr/bin/env python3
"""Run the two canonical loss sweeps (source inside / outside the critical
radius) and write their artifacts side by side.

Usage: python scripts/calr_sweep.py [outdir]
"""

import sys
from pathlib import Path

from npshell.cli import main as cli


def run(outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    grid = "1e-1,1e-2,1e-3,1e-4,1e-5,1e-6"
    for name, rs in (("resonant", "2.5"), ("bounded", "3.5")):
        out = outdir / f"sweep_{name}.jsonl"
        rc = cli(
            ["calr", "--ri", "1.0", "--re", "2.0", "--rs", rs,
             "--delta-grid", grid, "--out", str(out)]
        )
        if rc != 0:
            raise SystemExit(rc)
        print(f"{name}: {out} and {out.with_suffix('.csv')}")


if __name__ == "__main__":
    run(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("artifacts"))
