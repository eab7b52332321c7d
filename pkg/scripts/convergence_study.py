"""Convergence of the integrators against the matrix-exponential propagator.

Part 1: RK4 endpoint error at t = 2 for a ladder of step sizes (slope ~ 4).
Part 2: Monte Carlo error of the trajectory ensemble versus n_traj (slope ~ -1/2).

    python3 scripts/convergence_study.py --preset fig4-gammanc-05
"""
import argparse
from dataclasses import replace

import numpy as np

from qparliament.integrator import evolve, evolve_exact
from qparliament.presets import get_preset
from qparliament.trajectories import ensemble_average


def rk4_ladder(cfg, steps, t_end):
    ref = evolve_exact(replace(cfg, t_end=t_end, dt=steps[-1], sample_stride=1)).final_rho
    errs = []
    for dt in steps:
        rho = evolve(replace(cfg, t_end=t_end, dt=dt, sample_stride=1)).final_rho
        errs.append(np.abs(rho - ref).max())
    return np.array(errs)


def mc_ladder(cfg, sizes, repeats):
    exact = evolve_exact(cfg).mean_yes[0, -1]
    rms = []
    for n in sizes:
        dev = [ensemble_average(cfg, n, 10_000 * k + n).mean_yes[0, -1] - exact for k in range(repeats)]
        rms.append(np.sqrt(np.mean(np.square(dev))))
    return np.array(rms)


def slope(x, y):
    return np.polyfit(np.log(x), np.log(y), 1)[0]


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--preset", default="fig1-tau05")
    p.add_argument("--t-end", type=float, default=2.0)
    p.add_argument("--repeats", type=int, default=20)
    args = p.parse_args()
    cfg = get_preset(args.preset).config

    steps = np.array([0.04, 0.02, 0.01, 0.005])
    errs = rk4_ladder(cfg, steps, args.t_end)
    print("RK4 endpoint error at t =", args.t_end)
    for dt, e in zip(steps, errs):
        print(f"  dt={dt:<7g} max|rho - exact| = {e:.3e}")
    print(f"  fitted order {slope(steps, errs):.2f}")

    mc_cfg = replace(cfg, t_end=4.0, dt=0.005, sample_stride=800)
    sizes = np.array([50, 100, 200, 400])
    rms = mc_ladder(mc_cfg, sizes, args.repeats)
    print(f"trajectory ensemble, RMS error of mean_yes_1 at t=4 over {args.repeats} seeds")
    for n, r in zip(sizes, rms):
        print(f"  n_traj={n:<5d} rms = {r:.3e}")
    print(f"  fitted exponent {slope(sizes, rms):.2f}")


if __name__ == "__main__":
    main()
