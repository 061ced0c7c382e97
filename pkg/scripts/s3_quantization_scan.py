"""Scan omega on S3 and show that only omega = n + 1 + j gives a mode regular at both poles.

The chi=0-regular solution u is integrated to the equator.  By the chi -> pi - chi
symmetry the solution regular at chi = pi is u(pi - chi), and the two are
dependent exactly when W = -2 u u' vanishes at pi/2.  Roots of W are located
with brentq and checked against the endpoint growth |G(pi - eps)| / |G(eps)|.

    python3 scripts/s3_quantization_scan.py --j 2 --omega-max 8 --steps 301
"""

import argparse
import csv
import sys
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from curved_maxwell.geometry import SpaceModel
from curved_maxwell.radial import RadialParams, endpoint_growth, integrate_radial, local_solution


@dataclass
class ScanConfig:
    j: int = 1
    omega_min: float = 0.5
    omega_max: float = 8.0
    steps: int = 301
    eps: float = 0.1


def equator_wronskian(j: int, omega: float, eps: float = 0.1) -> float:
    """-2 u u' at pi/2 for the chi=0-regular solution, constant phase removed."""
    p = RadialParams(SpaceModel.s3(), omega, j)
    G0, dG0, _ = local_solution(p, np.array([eps]))
    G, dG = integrate_radial(p, eps, np.array([np.pi / 2]), (G0[0], dG0[0]), rtol=1e-12)
    phase = G0[0] / abs(G0[0])
    return float((-2 * G[0] * dG[0] / phase**2).real)


def scan(cfg: ScanConfig):
    omegas = np.linspace(cfg.omega_min, cfg.omega_max, cfg.steps)
    return omegas, np.array([equator_wronskian(cfg.j, w, cfg.eps) for w in omegas])


def eigenvalues(cfg: ScanConfig, omegas, w):
    roots = []
    for i in np.flatnonzero(np.sign(w[:-1]) != np.sign(w[1:])):
        roots.append(brentq(lambda x: equator_wronskian(cfg.j, x, cfg.eps), omegas[i], omegas[i + 1], xtol=1e-13))
    return roots


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--j", type=int, default=1)
    ap.add_argument("--omega-min", type=float, default=0.5)
    ap.add_argument("--omega-max", type=float, default=8.0)
    ap.add_argument("--steps", type=int, default=301)
    ap.add_argument("--csv", help="write (omega, wronskian) here")
    args = ap.parse_args(argv)
    cfg = ScanConfig(args.j, args.omega_min, args.omega_max, args.steps)
    omegas, w = scan(cfg)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            out = csv.writer(fh)
            out.writerow(["omega", "wronskian"])
            out.writerows(("%.17g" % a, "%.17g" % b) for a, b in zip(omegas, w))
    expected = np.arange(cfg.j + 1, cfg.omega_max + 1e-9)
    print(f"j = {cfg.j}: predicted spectrum {expected.tolist()}")
    worst = 0.0
    for root in eigenvalues(cfg, omegas, w):
        growth = endpoint_growth(RadialParams(SpaceModel.s3(), root, cfg.j), cfg.eps)
        off = abs(root - round(root))
        worst = max(worst, off)
        print(f"  root omega = {root:.12f}  distance to integer {off:.1e}  log10 growth {growth:+.1e}")
    return 0 if worst < 1e-8 else 1


if __name__ == "__main__":
    sys.exit(main())
