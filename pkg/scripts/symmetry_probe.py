"""Compare |B(x, a)| with |B(a, x)| on random pairs.

The Bergman kernel is not claimed to be Hermitian-symmetric; this just
measures how far the closed form is from it.
"""
import argparse

import numpy as np

from octbergman import algebra as alg
from octbergman.kernels import bergman_B
from octbergman.suites import random_ball_points

ap = argparse.ArgumentParser()
ap.add_argument("--pairs", type=int, default=100_000)
ap.add_argument("--rmax", type=float, default=0.8)
ap.add_argument("--seed", type=int, default=0)
args = ap.parse_args()

rng = np.random.default_rng(args.seed)
X = random_ball_points(rng, args.pairs, 0.0, args.rmax)
A = random_ball_points(rng, args.pairs, 0.0, args.rmax)
bxa, bax = bergman_B(X, A), bergman_B(A, X)
ratio = alg.norm(bxa) / alg.norm(bax)
conj_gap = alg.norm(bxa - alg.conj(bax)) / alg.norm(bxa)

print(f"pairs={args.pairs} rmax={args.rmax}")
print(f"|B(x,a)|/|B(a,x)|      min={ratio.min():.6f} median={np.median(ratio):.6f} max={ratio.max():.6f}")
print(f"|B(x,a)-conj B(a,x)|/|B(x,a)|  median={np.median(conj_gap):.3e} max={conj_gap.max():.3e}")
