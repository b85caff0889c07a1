#!/usr/bin/env python3
"""Print the N-P spectrum for a material pair and tabulate it to CSV.

Usage: python scripts/np_spectrum.py [lambda] [mu] [n_max]
"""

import sys

from npshell.kelvin import LameParams
from npshell.potentials import np_eigenvalue_limit, np_spectrum


def run(lam: float, mu: float, n_max: int) -> None:
    lame = LameParams(lam, mu)
    print(f"lambda = {lam}, mu = {mu}")
    for fam in ("T", "M", "N"):
        lim = complex(np_eigenvalue_limit(fam, lame)).real
        print(f"family {fam} (accumulation point {lim:+.6f}):")
        for ev in np_spectrum(n_max, lame, families=(fam,)):
            print(f"  n = {ev.n:3d}  xi = {complex(ev.value).real:+.12f}")


if __name__ == "__main__":
    args = sys.argv[1:]
    run(
        float(args[0]) if len(args) > 0 else 1.0,
        float(args[1]) if len(args) > 1 else 1.0,
        int(args[2]) if len(args) > 2 else 8,
    )
