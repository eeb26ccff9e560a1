"""Complexity experiments: per-direction simulation cost against the
dimension-dependent classical bounds, and measured merge-cost ratios of the
sequential versus hierarchical algorithms.

Usage: python scripts/complexity_sweep.py [--seed 11]
"""

import argparse
import math

import numpy as np

import robkit as rk
from robkit.gridspec import baseline_m_bound, classical_meq_bound
from robkit.indicators import Indicator, layered_oracle


def meq_table(seed):
    print("per-direction cost: dimension-free versus classical ball sampling")
    print(f"{'lambda':>8} {'d':>5} {'measured':>9} {'predicted':>9} {'1+ln(lam)':>9} "
          f"{'ball m_eq':>9} {'ball m':>9}")
    ind = layered_oracle(20, 11, 19)
    for lam in (1.5, math.e, 5.0, 10.0):
        grid = rk.build_grid(rk.GridScheme.GEOMETRIC, lam, 1.0, 500)
        for d in (10, 100):
            _, rep = rk.ssra(1000, grid, ind, d, seed=seed)
            print(
                f"{lam:8.3f} {d:5d} {rep.measured_meq:9.4f} {rep.predicted_meq:9.4f} "
                f"{1 + math.log(lam):9.4f} {classical_meq_bound(lam, d):9.1f} "
                f"{baseline_m_bound(lam, d, 0.05):9d}"
            )


def merge_ratio_table(seed):
    print("\nmerge cost: sequential / hierarchical row visits")

    def shell_parity(delta):
        rho = float(np.linalg.norm(delta.coords))
        return int(math.floor(200.0 * rho) % 2 == 0)

    ind = Indicator(shell_parity, "alternating shells")
    grid = rk.build_grid(rk.GridScheme.GEOMETRIC, math.exp(3.0), 1.0, 10**6)
    print(f"{'N':>6} {'ssra rows':>10} {'hsra rows':>10} {'ratio':>7} {'predicted':>9}")
    for n in (64, 256, 1000, 1024, 4096):
        _, rep_s = rk.ssra(n, grid, ind, 50, seed=seed)
        _, rep_h = rk.hsra(n, grid, ind, 50, seed=seed)
        ratio = rep_s.merge_row_visits / rep_h.merge_row_visits
        print(
            f"{n:6d} {rep_s.merge_row_visits:10d} {rep_h.merge_row_visits:10d} "
            f"{ratio:7.2f} {rk.predicted_speedup(n):9.2f}"
        )


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=11)
    args = ap.parse_args()
    meq_table(args.seed)
    merge_ratio_table(args.seed)


if __name__ == "__main__":
    main()
