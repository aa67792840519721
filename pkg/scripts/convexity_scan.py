#!/usr/bin/env python3
"""Two empirical scans beyond the pinned verification suite:

1. the tube-convexity modulus near the zero section: the largest delta such
   that the minimal two-plane trace of Hess(r^2) stays >= delta * r^2 on a
   fine grid r <= m/10 (the series predicts delta -> 2/m^2 at the sphere);
2. the sign-change radius of c'' for several sphere radii m, confirming it
   scales exactly linearly in m.

    python scripts/convexity_scan.py
"""
import argparse
import sys

from ahgeom.config import ModelParams
from ahgeom.convexity import hessian_r2, second_derivative_signs
from ahgeom.ode import integrate


def tube_modulus(profile, n: int = 400) -> float:
    m = profile.params.m
    delta = float("inf")
    for i in range(1, n + 1):
        r = (m / 10.0) * i / n
        h = hessian_r2(profile.at(r))
        delta = min(delta, h.min2sum / (r * r))
    return delta


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    ap.add_argument("--tol", type=float, default=1e-10)
    args = ap.parse_args()

    print(f"{'m':>6} {'delta (min2/r^2, r<=m/10)':>28} "
          f"{'2/m^2':>10} {'c'' crossing':>14} {'crossing/m':>12}")
    for m in args.m:
        profile = integrate(ModelParams(m=m, r_max=20.0 * m, tol=args.tol))
        delta = tube_modulus(profile)
        rep = second_derivative_signs(profile, profile.grid(1000))
        cross = rep.c_crossing if rep.c_crossing is not None else float("nan")
        print(f"{m:6.2f} {delta:28.6f} {2.0 / m ** 2:10.4f} "
              f"{cross:14.9f} {cross / m:12.9f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
