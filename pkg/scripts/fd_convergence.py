"""Residual of D applied to the kernels as a function of the FD step.

Prints one row per step for plain central differences and for Richardson
extrapolation; the central column should fall by ~4x per halving.
"""
import argparse

import numpy as np

from octbergman import algebra as alg
from octbergman.fields import DiffScheme, apply_D
from octbergman.kernels import KernelParams, bergman_field, cauchy_field, szego_field
from octbergman.suites import random_ball_points

ap = argparse.ArgumentParser()
ap.add_argument("--points", type=int, default=200)
ap.add_argument("--seed", type=int, default=0)
args = ap.parse_args()

rng = np.random.default_rng(args.seed)
X = random_ball_points(rng, args.points, 0.1, 0.9)
a = 0.5 * alg.basis[3].coeffs
fields = {
    "E(.-2e2)": cauchy_field(2 * alg.basis[2].coeffs),
    "S(.,a)": szego_field(KernelParams(a)),
    "B(.,a)": bergman_field(KernelParams(a)),
}

print(f"{'field':<10s} {'h':>9s} {'central':>11s} {'richardson':>11s}")
for name, f in fields.items():
    size = np.sqrt(np.mean(alg.norm2(f.evaluate(X))))
    prev = None
    for h in 2.0 ** -np.arange(3, 13):
        c = np.sqrt(np.mean(alg.norm2(apply_D(f, DiffScheme(h, "central")).evaluate(X)))) / size
        r = np.sqrt(np.mean(alg.norm2(apply_D(f, DiffScheme(h, "richardson")).evaluate(X)))) / size
        order = "" if prev is None else f"  order {np.log2(prev / c):.2f}"
        print(f"{name:<10s} {h:9.2e} {c:11.3e} {r:11.3e}{order}")
        prev = c
