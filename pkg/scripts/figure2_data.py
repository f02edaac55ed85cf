"""Data behind the graphical spectrum plot: F(E) for the figure-2 preset.

Writes figure2_curve.csv (E, F) and figure2_roots.csv (index, E, nodes).  F
is clipped nowhere: next to its poles it is large, and plotting code should
set its own y-range.
"""
import argparse
from pathlib import Path

import numpy as np

from lwpot.cli import csv_text
from lwpot.potential import FIGURE2
from lwpot.spectrum import find_bound_states, spectrum_function


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", type=Path, default=Path("."))
    ap.add_argument("--emin", type=float, default=-3.0)
    ap.add_argument("--emax", type=float, default=-0.005)
    ap.add_argument("--points", type=int, default=4000)
    args = ap.parse_args()
    res = find_bound_states(FIGURE2)
    es = np.linspace(args.emin, args.emax, args.points)
    F = [spectrum_function(e, FIGURE2) for e in es]
    args.outdir.mkdir(parents=True, exist_ok=True)
    (args.outdir / "figure2_curve.csv").write_text(csv_text(["E", "F"], zip(es, F), None), encoding="utf-8", newline="\n")
    roots = [(k, r.energy, r.nodes) for k, r in enumerate(res.roots)]
    (args.outdir / "figure2_roots.csv").write_text(
        csv_text(["index", "E", "nodes"], roots, None), encoding="utf-8", newline="\n"
    )
    for k, E, n in roots:
        print(f"E_{k} = {E!r}  ({n} nodes)")


if __name__ == "__main__":
    main()
