#!/usr/bin/env python3
"""Print the accepted steps of one tracked path (t, step, min x, corrector count)."""

import argparse

import numpy as np

from mtsolve.homotopy import TrackerConfig, scale_problem, track
from mtsolve.mtensor import GeneratorConfig, generate_instance, max_row_sum, tau0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-m", "--order", type=int, default=3)
    ap.add_argument("-n", "--dim", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--epsilon", type=float, default=0.01)
    ap.add_argument("--h-init", type=float, default=0.2)
    args = ap.parse_args()

    A, b, d = generate_instance(GeneratorConfig(args.order, args.dim, args.epsilon, args.seed))
    p = scale_problem(A, b)
    print(f"m={A.order} n={A.dim} omega={p.omega:.6g} s={d.s:.6g} "
          f"tau0(row-sum bound)={tau0(d.s, max_row_sum(d.B)):.3e}")

    prev = {"t": 0.0, "nw": 0}
    print(f"{'t':>10} {'step':>10} {'min x':>12} {'newton':>7}")

    def show(state):
        print(f"{state.t:>10.6f} {state.t - prev['t']:>10.6f} {np.min(state.x):>12.5e} "
              f"{state.newton_count - prev['nw']:>7d}")
        prev["t"], prev["nw"] = state.t, state.newton_count

    res = track(A, b, TrackerConfig(h_init=args.h_init), callback=show)
    print(f"status={res.status.value} euitr={res.euitr} nwitr={res.nwitr} rejected={res.rejected} "
          f"residue_scaled={res.residue_scaled:.3e} residue_orig={res.residue_orig:.3e}")


if __name__ == "__main__":
    main()
