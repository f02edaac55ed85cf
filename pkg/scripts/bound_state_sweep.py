"""Bound-state counts over a (V0, sigma) grid, three ways.

For each pair the count comes from the spectrum root finder, from the zero-energy
node theorem and from Numerov shooting; the Bargmann, Calogero and Chadan
numbers are listed alongside.  Exits 4 if any row disagrees.
"""
import argparse
import sys
from itertools import product
from pathlib import Path

from lwpot import oracle, spectrum
from lwpot.cli import csv_text
from lwpot.potential import PhysicalParams


def sweep(V0s, sigmas):
    for V0, sigma in product(V0s, sigmas):
        p = PhysicalParams.singular(V0, sigma)
        res = spectrum.find_bound_states(p)
        shoot = oracle.shooting_eigenvalues(p)
        gap = max((abs(a / b - 1) for a, b in zip(res.energies, shoot)), default=0.0)
        yield (V0, sigma, res.exact_n, res.zero_energy_nodes, len(shoot), gap, res.chadan, res.calogero, res.bargmann)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--V0", type=float, nargs="+", default=[0.5, 1.0, 3.0, 10.0])
    ap.add_argument("--sigma", type=float, nargs="+", default=[0.5, 1.0, 3.0])
    ap.add_argument("--out", type=Path, default=Path("bound_state_sweep.csv"))
    args = ap.parse_args()
    rows = list(sweep(args.V0, args.sigma))
    cols = ["V0", "sigma", "n_spectrum", "n_nodes", "n_shooting", "max_rel_gap", "chadan", "calogero", "bargmann"]
    args.out.write_text(csv_text(cols, rows, None), encoding="utf-8", newline="\n")
    bad = [r for r in rows if not r[2] == r[3] == r[4]]
    for r in rows:
        print(f"V0={r[0]:<5g} sigma={r[1]:<4g} counts {r[2]} {r[3]} {r[4]}  gap {r[5]:.1e}")
    sys.exit(4 if bad else 0)


if __name__ == "__main__":
    main()
