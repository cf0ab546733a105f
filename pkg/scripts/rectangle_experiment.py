"""Scaled last first-row entry of random rectangular tableaux.

Prints empirical moments of Y next to the exact variance and the Gaussian
limit variance, for a handful of square and non-square rectangles.
"""

import argparse
import json

from threshold_cumulants.montecarlo import rectangle_experiment


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=20_000)
    parser.add_argument("--seed", type=int, default=20240531)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--sizes", default="5x5,10x10,15x15,10x20")
    args = parser.parse_args()

    for spec in args.sizes.split(","):
        p, q = (int(v) for v in spec.split("x"))
        r = rectangle_experiment(p, q, args.samples, args.seed, args.threads)
        s = r.summary
        row = {
            "p": p,
            "q": q,
            "mean": round(s.mean, 5),
            "var": round(s.variance, 5),
            "exact_var": round(r.exact_variance_y, 5),
            "limit_var": round(r.sigma2_alpha, 5),
            "skew": round(s.skewness, 4),
            "ex_kurt": round(s.excess_kurtosis, 4),
        }
        print(json.dumps(row), flush=True)


if __name__ == "__main__":
    main()
