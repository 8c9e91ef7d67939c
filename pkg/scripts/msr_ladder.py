"""Exact maximum series of the prime systems, one grid at a time.

    python scripts/msr_ladder.py --system SP1 --max-n 11 --out ladder.csv

Rows: system, n, msr, certification, nodes, seconds.  Larger n grows fast:
the 12-grid prime sieve takes a few minutes on one core.
"""

import argparse
import csv
import logging
import sys
import time

from fillings.primes import PrimeSystemSpec, SystemKind
from fillings.series import msr_search


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--system", choices=[k.value for k in SystemKind], default="SP1")
    ap.add_argument("--max-n", type=int, default=9)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--budget", type=int)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, stream=sys.stderr)

    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["system", "n", "msr", "certification", "nodes", "seconds"])
    for n in range(1, args.max_n + 1):
        try:
            moduli = PrimeSystemSpec(args.system, n).moduli()
        except ValueError:
            continue
        t = time.perf_counter()
        res = msr_search(moduli, 0, args.budget, args.workers)
        w.writerow([args.system, n, res.length, res.certification.value,
                    res.nodes_explored, f"{time.perf_counter() - t:.2f}"])
        out.flush()


if __name__ == "__main__":
    main()
