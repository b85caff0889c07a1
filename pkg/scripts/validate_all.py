#!/usr/bin/env python3
"""Run every oracle validation suite and stop nonzero if any check fails.

Usage: python scripts/validate_all.py [outdir]
"""

import sys
from pathlib import Path

from npshell.cli import main as cli

SUITES = ("layers", "np", "lame", "gram", "energy")


def run(outdir: Path) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    worst_rc = 0
    for suite in SUITES:
        rc = cli(
            ["validate", "--suite", suite, "--n-max", "6",
             "--quad-theta", "64", "--quad-phi", "128",
             "--out", str(outdir / f"validate_{suite}.jsonl")]
        )
        worst_rc = max(worst_rc, rc)
    return worst_rc


if __name__ == "__main__":
    sys.exit(run(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("artifacts")))
