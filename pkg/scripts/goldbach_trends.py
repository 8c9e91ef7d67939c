"""Goldbach interval statistics and their normalized traces.

    python scripts/goldbach_trends.py --n-max 80

The normalized minimum is G / 2J * ln^2(2J) taken at the argument of the
minimum.  Only trends are reported; no limit is asserted.
"""

import argparse

from fillings.primes import IntervalScheme, goldbach_interval_stats, goldbach_normalized, goldbach_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=50)
    args = ap.parse_args()
    table = goldbach_table(IntervalScheme.J(args.n_max).hi)
    print("n,lo,hi,minG,meanG,maxG,min_norm,mean_norm,max_norm")
    for n in range(1, args.n_max + 1):
        s = goldbach_interval_stats(n, table)
        lo, mid, hi = goldbach_normalized(s)
        print(f"{n},{s.lo},{s.hi},{s.min_g},{s.mean_g},{s.max_g},{lo:.6f},{mid:.6f},{hi:.6f}")


if __name__ == "__main__":
    main()
