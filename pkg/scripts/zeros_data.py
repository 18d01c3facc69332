"""Zeros of F_G(v(t1)|z) for a few graphs, with their radial spread and low moments.

    python3 scripts/zeros_data.py --q 5 --w 3 --out zeros.csv
"""
import argparse
import csv
import sys

import numpy as np

from rcm_lab.graphs import named_graph, random_regular
from rcm_lab.rank2 import SpinModel2
from rcm_lab.roots import circle_check, root_moments


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=float, default=5.0)
    ap.add_argument("--w", type=float, default=3.0)
    ap.add_argument("--graphs", nargs="+", default=["k4", "k5", "octahedron", "petersen", "cycle:8"])
    ap.add_argument("--random", type=int, nargs="*", default=[10, 12], help="sizes of random cubic graphs")
    ap.add_argument("--out")
    args = ap.parse_args()

    m = SpinModel2.random_cluster(args.q, args.w)
    graphs = [named_graph(s) for s in args.graphs] + [random_regular(n, 3, 0) for n in args.random]
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    wr = csv.writer(fh, lineterminator="\n")
    wr.writerow(["graph", "re", "im", "abs"])
    for g in graphs:
        rep = circle_check(g, m, g.require_regular())
        for z in sorted(rep.roots, key=lambda z: np.angle(z)):
            wr.writerow([g.name, repr(z.real), repr(z.imag), repr(abs(z))])
        m2 = root_moments(rep.roots, 2)[0]
        print(f"{g.name:>14}: R_c={rep.target_radius:.10f} dev={rep.max_radial_deviation:.1e} "
              f"residual={rep.residual_max:.1e} m2={m2:.6f}", file=sys.stderr)
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
