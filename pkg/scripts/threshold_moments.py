"""Exact threshold cumulants for one shape across a grid of u0, with a Monte Carlo check."""

import argparse
from fractions import Fraction

from threshold_cumulants import YoungDiagram, corner_profile
from threshold_cumulants.cumulants import cumulant_tree_formula
from threshold_cumulants.montecarlo import estimate_threshold


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--shape", default="4,2,2,2")
    parser.add_argument("--order", type=int, default=4)
    parser.add_argument("--samples", type=int, default=50_000)
    parser.add_argument("--seed", type=int, default=20240531)
    args = parser.parse_args()

    lam = YoungDiagram.parse(args.shape)
    concave = corner_profile(lam).concave
    lo, hi = int(concave[0]) - 1, int(concave[-1])
    for k in range(lo, hi + 1):
        u0 = Fraction(2 * k + 1, 2)
        exact = [cumulant_tree_formula(lam, u0, n) for n in range(1, args.order + 1)]
        s = estimate_threshold(lam, u0, args.samples, args.seed)
        mc = " ".join(f"{v:+.5f}" for v in s.k_statistics[: min(3, args.order)])
        print(f"u0={str(u0):>5}  exact {' '.join(str(v) for v in exact)}  |  mc {mc}", flush=True)


if __name__ == "__main__":
    main()
