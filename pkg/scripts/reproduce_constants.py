"""Print the sharp constants and their envelopes over a radius sweep."""

import argparse

import numpy as np

from bohrsharp.functionals import PAPER_EXAMPLE_WEIGHT, THIRD, psi_functional
from bohrsharp.sharp import astar, lambda_bounds, lambda_generic_mobius, lambda_phi0, lambda_weighted


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=12)
    args = ap.parse_args()

    print(f"Lambda_phi0(1/3)        = {lambda_phi0(THIRD).lam:.12f}  (16/9 = {16 / 9:.12f})")
    print(f"weighted Lambda(1/3)    = {lambda_weighted(PAPER_EXAMPLE_WEIGHT, THIRD).lam:.12f}")
    print(f"psi sharp constant      = {lambda_generic_mobius(psi_functional, THIRD).lam:.12f}")
    print()
    print(f"{'R':>8} {'lower':>14} {'Lambda(R)':>14} {'upper':>14} {'a*(R)':>10}")
    for R in np.linspace(0.02, THIRD, args.points):
        res = lambda_phi0(R)
        pair = lambda_bounds(R)
        a = astar(R) if R < THIRD else 1.0
        print(f"{R:8.5f} {pair.lower:14.8f} {res.lam:14.8f} {pair.upper:14.8f} {a:10.6f}")


if __name__ == "__main__":
    main()
