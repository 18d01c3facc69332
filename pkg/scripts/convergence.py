"""Gap between (1/n) ln Z2 (and, for small graphs, ln Z) and ln Phi on random regular graphs.

    python3 scripts/convergence.py --d 3 --q 2.5 --w 1 --n 8 12 16 20 --seeds 10
"""
import argparse
import math

import numpy as np

from rcm_lab.bethe import phi
from rcm_lab.graphs import random_regular
from rcm_lab.partition import log_z2, z_rc


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--q", type=float, default=2.5)
    ap.add_argument("--w", type=float, default=1.0)
    ap.add_argument("--n", type=int, nargs="+", default=[8, 12, 16, 20])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--z-edges", type=int, default=18, help="exact ln Z only up to this many edges")
    args = ap.parse_args()

    lphi = math.log(phi(args.q, args.w, args.d))
    print(f"ln Phi = {lphi!r}")
    print(f"{'n':>4} {'mean gap Z2':>14} {'sd':>10} {'mean gap Z':>14}")
    for n in args.n:
        if n * args.d % 2:
            print(f"{n:>4}  skipped: n*d odd")
            continue
        g2, gz = [], []
        for s in range(args.seeds):
            g = random_regular(n, args.d, s)
            g2.append(abs(log_z2(g, args.q, args.w) / n - lphi))
            if g.m <= args.z_edges:
                gz.append(abs(math.log(z_rc(g, args.q, args.w)) / n - lphi))
        zcol = f"{np.mean(gz):14.6e}" if gz else f"{'-':>14}"
        print(f"{n:>4} {np.mean(g2):14.6e} {np.std(g2):10.2e} {zcol}")


if __name__ == "__main__":
    main()
