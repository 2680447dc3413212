"""Error of the Szego and Bergman reproducing formulas against sample count, MC vs QMC."""
import argparse

import numpy as np

from octbergman import algebra as alg
from octbergman.kernels import KernelParams, bergman_field, cauchy_E2, cauchy_field, szego_field
from octbergman.quadrature import QuadratureSpec, inner_ball, inner_sphere

ap = argparse.ArgumentParser()
ap.add_argument("--seed", type=int, default=42)
ap.add_argument("--max-log2", type=int, default=20)
args = ap.parse_args()

b = 2 * alg.basis[2].coeffs
a = 0.5 * (alg.basis[1].coeffs + alg.basis[2].coeffs) / np.sqrt(2)
f = cauchy_field(b)
target = cauchy_E2(a, b)
p = KernelParams(a)

print(f"{'n':>9s} {'strategy':>8s} {'szego err':>11s} {'szego se':>10s} {'bergman err':>12s} {'bergman se':>11s}")
for k in range(12, args.max_log2 + 1, 2):
    n = 2**k
    for strat in ("mc", "qmc"):
        q = QuadratureSpec(strat, n, args.seed)
        s = inner_sphere(f, szego_field(p), q)
        bb = inner_ball(f, bergman_field(p), q)
        print(f"{n:9d} {strat:>8s} {s.error_to(target):11.3e} {s.std_error:10.3e} {bb.error_to(target):12.3e} {bb.std_error:11.3e}")
