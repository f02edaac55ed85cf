"""Data behind the potential plot: V(x), z(x) and both asymptotes (figure-1 preset).

Writes figure1_potential.csv (x, z, V, asymptote_origin, asymptote_tail) on a
log-spaced grid that resolves the 1/sqrt(x) head and the exponential tail.
"""
import argparse
from pathlib import Path

import numpy as np

from lwpot.cli import csv_text
from lwpot.potential import FIGURE1, PotentialKind, asymptote_origin, asymptote_tail, eval_potential, map_z


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("figure1_potential.csv"))
    ap.add_argument("--points", type=int, default=600)
    args = ap.parse_args()
    p = FIGURE1
    xs = np.geomspace(1e-4 * p.sigma, 12 * p.sigma, args.points)
    cols = (
        xs,
        map_z(PotentialKind.SINGULAR, xs, p),
        eval_potential(PotentialKind.SINGULAR, xs, p),
        asymptote_origin(p, xs),
        asymptote_tail(p, xs),
    )
    text = csv_text(["x", "z", "V", "asymptote_origin", "asymptote_tail"], zip(*cols), None)
    args.out.write_text(text, encoding="utf-8", newline="\n")
    print(f"wrote {len(xs)} rows to {args.out}")


if __name__ == "__main__":
    main()
