"""Sweep w across the critical curve for several (q, d) and write the phase data as CSV.

    python3 scripts/phase_sweep.py --out phase.csv
"""
import argparse
import csv
import sys

import numpy as np

from rcm_lab.bethe import phase_report, w_critical


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, nargs="+", default=[3, 4, 8])
    ap.add_argument("--q", type=float, nargs="+", default=[2.0, 2.5, 5.0, 10.0])
    ap.add_argument("--points", type=int, default=41)
    ap.add_argument("--out")
    args = ap.parse_args()

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    wr = csv.writer(fh, lineterminator="\n")
    wr.writerow(["q", "w", "d", "w_c", "phi", "phi_rank1", "excess", "regime", "t0", "r_c", "n_fixed_points"])
    for d in args.d:
        for q in args.q:
            wc = w_critical(q, d)
            for w in np.linspace(0.0, 3 * wc, args.points):
                rep = phase_report(q, float(w), d)
                wr.writerow([q, repr(float(w)), d, repr(wc), repr(rep.phi), repr(rep.phi_rank1),
                             repr(rep.phi / rep.phi_rank1 - 1), rep.regime, repr(rep.t0),
                             "" if rep.r_c is None else repr(rep.r_c), len(rep.fixed_points)])
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
