"""Verification suites: each returns a list of :class:`~octbergman.report.Check` rows."""
from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence

import numpy as np

from . import __version__
from . import algebra as alg
from .fields import (
    DiffScheme,
    Field,
    SingularSet,
    adjoint_A,
    apply_D,
    apply_Dbar,
    constant,
    from_poly,
    kelvin,
    laplacian,
    partials,
)
from .kernels import (
    KernelParams,
    bergman_B,
    bergman_field,
    cauchy_E2,
    cauchy_field,
    dbar_identity,
    szego_field,
    szego_S,
    unified_kernel,
)
from .polynomials import OctPoly
from .quadrature import QuadratureSpec, ball_average, inner_ball, inner_sphere
from .report import Check, VerificationReport
from .spherical import (
    RadialFitSpec,
    allowed_block,
    apply_T,
    bergman_norm_series,
    parseval_decompose,
    radial_fit,
)

SUITES = ("algebra", "analyticity", "szego", "bergman", "parseval", "counterexample", "unified")
SEED_ENV = "OCTBERGMAN_SEED"

E = np.eye(8)
DEFAULT_POINTS = (
    np.zeros(8),
    0.3 * E[1],
    0.5 * (E[1] + E[2]) / math.sqrt(2),
    0.7 * E[7],
)
DEFAULT_POLES = (2.0 * E[2], 2.0 * (E[0] + E[3]) / math.sqrt(2))

# reference strings carried by every row
REF = {
    "algebra": "|xy|=|x||y|; [x,y,z]=[y,z,x]=-[y,x,z]; [x,x,y]=[conj(x),x,y]=0",
    "table": "W={(1,2,3),(1,4,5),(1,7,6),(2,4,6),(2,5,7),(3,4,7),(3,6,5)}",
    "D": "Df = sum e_i df/dx_i = 0 (left O-analytic)",
    "lap": "Dbar(Df) = (Dbar D) f = Lap f",
    "szego": "f(a)=(f,S(.,a))_{S^7}",
    "kelvin": "S(x,a)=K(E(x,conj(a)))",
    "bergman": "f(a)=(f,B(.,a))_B",
    "AE": "B(x,a)=A(E(x,a))",
    "norm": "||f||_B^2=(f,f)_B=(1/w8) int_B |f|^2 dV",
    "series": "||f||_B^2=sum (2k+8)^-1 ||P_k f||_{S^7}^2",
    "T": "(f_r,TS^r(.,a))_B=(f_r,S^r(.,a))_{S^7}",
    "parseval": "(f,g)_{S^7}=sum (P_kf,P_kg)+(Q_kf,Q_kg)+(P_kf,Q_{k+1}g)+(Q_{k+1}f,P_kg)",
    "norm_split": "||f||^2=sum ||P_kf||^2+||Q_kf||^2+2Re(P_kf,Q_{k+1}f)",
    "counter": "(P_1f,Q_2g)_{S^7}=(-2e6/w8) int x0^2 x1^2 dS",
    "dbar": "conj(B(x,a)) conj(x) = Dbar_a[(1-|a|^2|x|^2)/|1-a conj(x)|^8]",
    "unified": "f(a)=(1/w_m) int_{B_m} K_m(x,a) (x/|x|^2 f(x)) dV",
}


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "42"))


@dataclass
class SuiteConfig:
    seed: int = field(default_factory=default_seed)
    n_samples: int = 1_000_000
    strategy: Literal["mc", "qmc", "exact"] = "mc"
    h: float = 1e-3
    richardson: bool = True
    max_degree: int = 8
    point_a: tuple[float, ...] | None = None
    workers: int = 1
    fd_points: int = 200
    pairs: int = 100

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"h must be positive, got {self.h}")
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be positive, got {self.n_samples}")
        if self.strategy not in ("mc", "qmc", "exact"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.point_a is not None:
            if len(self.point_a) != 8:
                raise ValueError("point_a needs 8 coordinates")
            if math.hypot(*self.point_a) >= 1.0:
                raise ValueError("point_a must lie inside the unit ball")

    @property
    def scheme(self) -> DiffScheme:
        return DiffScheme(self.h, "richardson" if self.richardson else "central")

    @property
    def points(self) -> tuple[np.ndarray, ...]:
        if self.point_a is not None:
            return (np.asarray(self.point_a, dtype=np.float64),)
        return DEFAULT_POINTS

    def quad(self, n: int | None = None, strategy: str | None = None) -> QuadratureSpec:
        """Sampling spec; the exact strategy falls back to mc where no polynomial form exists."""
        strat = strategy or self.strategy
        if strat == "exact":
            strat = "mc"
        return QuadratureSpec(strat, n or self.n_samples, self.seed, workers=self.workers)

    def to_dict(self) -> dict:
        # workers is deliberately absent: output must not depend on it
        return {
            "seed": self.seed,
            "n_samples": self.n_samples,
            "strategy": self.strategy,
            "h": self.h,
            "richardson": self.richardson,
            "K": self.max_degree,
            "point_a": None if self.point_a is None else [float(v) for v in self.point_a],
        }


def _rng(cfg: SuiteConfig, stream: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, stream])


def random_ball_points(rng, n: int, rmin: float, rmax: float) -> np.ndarray:
    """Points with uniform direction and radius uniform in ``[rmin, rmax]``."""
    z = rng.standard_normal((n, 8))
    z /= alg.norm(z)[:, None]
    return z * rng.uniform(rmin, rmax, (n, 1))


def _tag(a) -> str:
    a = np.asarray(a)
    nz = [f"{v:g}e{i}" for i, v in enumerate(a) if v != 0]
    return "+".join(nz) if nz else "0"


# algebra ----------------------------------------------------------------------------


def suite_algebra(cfg: SuiteConfig) -> list[Check]:
    rng = _rng(cfg, 1)
    n = 10_000
    x, y, z = (rng.uniform(-1, 1, (n, 8)) for _ in range(3))
    nx, ny, nz = alg.norm(x), alg.norm(y), alg.norm(z)
    b = alg.basis
    rows = []

    worst = 0.0
    for (p, q, r) in alg.TRIPLES:
        for u, v, w in ((p, q, r), (q, r, p), (r, p, q)):
            worst = max(worst, (b[u] * b[v] - b[w]).norm(), (b[v] * b[u] + b[w]).norm())
    for i in range(1, 8):
        worst = max(worst, (b[i] * b[i] + b[0]).norm(), (b[0] * b[i] - b[i]).norm(), (b[i] * b[0] - b[i]).norm())
    rows.append(Check.compare("algebra.basis_relations", REF["table"], [worst] + [0] * 7, np.zeros(8), 0.0, "abs"))
    rows.append(Check.compare("algebra.e1e2", REF["table"], b[1] * b[2], b[3], 0.0, "abs"))
    rows.append(Check.compare("algebra.e1e6", REF["table"], b[1] * b[6], -b[7], 0.0, "abs"))

    lhs = alg.scalar(alg.norm(alg.mul(x, y)))
    rhs = alg.scalar(nx * ny)
    rows.append(Check.worst("algebra.multiplicativity", REF["algebra"], lhs, rhs, nx * ny, 1e-13))
    rows.append(Check.worst("algebra.alternative_xxy", REF["algebra"], alg.associator(x, x, y), 0 * x, nx**2 * ny, 1e-13))
    rows.append(Check.worst("algebra.alternative_conjxxy", REF["algebra"], alg.associator(alg.conj(x), x, y), 0 * x, nx**2 * ny, 1e-13))
    sc = nx * ny * nz
    rows.append(Check.worst("algebra.associator_cyclic", REF["algebra"], alg.associator(x, y, z), alg.associator(y, z, x), sc, 1e-13))
    rows.append(Check.worst("algebra.associator_antisym", REF["algebra"], alg.associator(x, y, z), -alg.associator(y, x, z), sc, 1e-13))
    rows.append(Check.worst("algebra.conj_antiautomorphism", "conj(xy)=conj(y)conj(x)", alg.conj(alg.mul(x, y)), alg.mul(alg.conj(y), alg.conj(x)), nx * ny, 1e-13))
    rows.append(Check.worst("algebra.x_conjx", "x conj(x) = |x|^2", alg.mul(x, alg.conj(x)), alg.scalar(nx**2), nx**2, 1e-13))
    rows.append(Check.worst("algebra.inverse", "x^-1 = conj(x)/|x|^2", alg.mul(x, alg.inverse(x)), alg.scalar(np.ones(n)), 1.0, 1e-13))
    rows.append(Check.compare("algebra.associator_e1e2e4", REF["algebra"], alg.associator(b[1], b[2], b[4]), 2 * b[7], 0.0, "abs"))

    # a flattened product would make these two fields equal
    f1, f2, f4 = constant(b[1]), constant(b[2]), constant(b[4])
    pt = np.zeros((1, 8))
    gap = alg.norm(((f1 * f2) * f4).fn(pt) - (f1 * (f2 * f4)).fn(pt))[0]
    rows.append(Check.compare("algebra.bracketing_matters", "[e1,e2,e4] != 0", [gap] + [0] * 7, 2 * b[0], 0.0, "abs"))
    return rows


# analyticity ------------------------------------------------------------------------


def _analytic_rows(name, f: Field, X, scheme, tol=1e-5) -> Check:
    # local scale: size of the field plus size of its Jacobian
    J = partials(f, X, scheme)
    scale = np.linalg.norm(J.reshape(len(X), -1), axis=1) + alg.norm(f.fn(X))
    Df = apply_D(f, scheme).evaluate(X)
    return Check.worst(f"analyticity.D_{name}", REF["D"], Df, 0 * Df, scale, tol)


def fd_order(f: Field, X, h: float) -> float:
    """Observed order of the plain central scheme from the D-residual at ``h`` and ``h/2``."""
    r1 = alg.norm(apply_D(f, DiffScheme(h, "central", relative=False)).evaluate(X))
    r2 = alg.norm(apply_D(f, DiffScheme(h / 2, "central", relative=False)).evaluate(X))
    return math.log2(math.sqrt(np.mean(r1**2)) / math.sqrt(np.mean(r2**2)))


def suite_analyticity(cfg: SuiteConfig) -> list[Check]:
    rng = _rng(cfg, 2)
    scheme = cfg.scheme
    n = cfg.fd_points
    rows = []
    XE = random_ball_points(rng, n, 0.5, 2.0)
    E0 = cauchy_field()
    rows.append(_analytic_rows("E", E0, XE, scheme))
    XB = random_ball_points(rng, n, 0.0, 0.95)
    for a in cfg.points:
        p = KernelParams(a)
        rows.append(_analytic_rows(f"S[a={_tag(a)}]", szego_field(p), XB, scheme))
        rows.append(_analytic_rows(f"B[a={_tag(a)}]", bergman_field(p), XB, scheme))

    x = OctPoly.identity()
    X1 = OctPoly.var
    f = from_poly(X1(1) - X1(0) * alg.basis[1], "x1-x0e1")
    rows.append(_analytic_rows("x1-x0e1", f, XB, scheme))
    quartic = from_poly((X1(1) * X1(2) * X1(3) * X1(4)).Dbar(), "Dbar(x1x2x3x4)")
    rows.append(_analytic_rows("Dbar(x1x2x3x4)", quartic, XB, scheme))

    order = fd_order(E0, XE, 1e-2)
    rows.append(Check.compare("analyticity.fd_order_E", "central differences are second order", [order] + [0] * 7, 2.0 * alg.basis[0], 0.1, "abs"))

    lapE = laplacian(E0, scheme).evaluate(XE)
    rows.append(Check.worst("analyticity.harmonic_E", REF["lap"], lapE, 0 * lapE, alg.norm(XE) ** -8, 1e-4))

    c = 3.0 * alg.basis[5].coeffs
    phi = Field(lambda X: alg.scalar(1.0 / alg.norm2(X - c)), SingularSet.of(c), "1/|x-c|^2")
    lhs = apply_Dbar(apply_D(phi, scheme), scheme).evaluate(XB)
    rhs = laplacian(phi, scheme).evaluate(XB)
    rows.append(Check.worst("analyticity.DbarD_is_laplacian", REF["lap"], lhs, rhs, alg.norm(rhs), 1e-5))
    lhs = apply_D(apply_Dbar(phi, scheme), scheme).evaluate(XB)
    rows.append(Check.worst("analyticity.DDbar_is_laplacian", REF["lap"], lhs, rhs, alg.norm(rhs), 1e-5))
    return rows


# Szego ---------------------------------------------------------------------------------


def _mc_row(id, ref, result, target) -> Check:
    return Check.compare(id, ref, result.value, target, 4.0 * result.std_error, "abs", result.std_error)


def suite_szego(cfg: SuiteConfig) -> list[Check]:
    rows = []
    quad = cfg.quad()
    for b in DEFAULT_POLES[:1] if cfg.point_a is None else DEFAULT_POLES:
        f = cauchy_field(b)
        for a in cfg.points:
            res = inner_sphere(f, szego_field(KernelParams(a)), quad)
            rows.append(_mc_row(f"szego.reproduce[b={_tag(b)},a={_tag(a)}]", REF["szego"], res, cauchy_E2(a, b)))

    one = constant(alg.basis[0])
    res = inner_sphere(one, one, quad)
    rows.append(Check.compare("szego.unit_constant", "(1,1)_{S^7}=1", res.value, alg.basis[0], 1e-12, "abs"))

    rng = _rng(cfg, 3)
    X = random_ball_points(rng, cfg.pairs, 0.05, 1.0)
    A = random_ball_points(rng, cfg.pairs, 0.0, 0.9)
    K = np.concatenate([kelvin(cauchy_field(alg.conj(a))).evaluate(X[i : i + 1]) for i, a in enumerate(A)])
    S = szego_S(X, A)
    rows.append(Check.worst("szego.kelvin_identity", REF["kelvin"], K, S, alg.norm(S), 1e-12))

    g = szego_field(KernelParams(cfg.points[-1]))
    f = cauchy_field(DEFAULT_POLES[0])
    small = cfg.quad(n=min(cfg.n_samples, 100_000))
    fg, gf = inner_sphere(f, g, small), inner_sphere(g, f, small)
    rows.append(Check.compare("szego.conjugate_symmetry", "(f,g)=conj((g,f))", fg.value, gf.value.conj(), 1e-12))
    return rows


# Bergman -------------------------------------------------------------------------------


def suite_bergman(cfg: SuiteConfig) -> list[Check]:
    rows = []
    quad = cfg.quad()
    one = constant(alg.basis[0])
    for b in DEFAULT_POLES[:1] if cfg.point_a is None else DEFAULT_POLES:
        f = cauchy_field(b)
        for a in cfg.points:
            res = inner_ball(f, bergman_field(KernelParams(a)), quad)
            rows.append(_mc_row(f"bergman.reproduce[b={_tag(b)},a={_tag(a)}]", REF["bergman"], res, cauchy_E2(a, b)))
    for a in cfg.points:
        res = inner_ball(one, bergman_field(KernelParams(a)), quad)
        rows.append(_mc_row(f"bergman.reproduce_const[a={_tag(a)}]", REF["bergman"], res, alg.basis[0]))

    res0 = inner_ball(one, bergman_field(KernelParams()), quad)
    rows.append(Check.compare("bergman.const_at_origin_mc", REF["bergman"], res0.value, alg.basis[0], 1e-3, "abs", res0.std_error))
    analytic = bergman_B(alg.basis[3], alg.Octonion(0.0)).re * (1.0 / 8.0)
    rows.append(Check.compare("bergman.const_at_origin_analytic", "B(x,0)=8, Vol(B)/w8=1/8", alg.scalar(analytic), alg.basis[0], 1e-12, "abs"))

    rng = _rng(cfg, 4)
    X = random_ball_points(rng, cfg.pairs, 0.2, 0.8)
    A = random_ball_points(rng, cfg.pairs, 0.0, 0.8)
    AE = np.concatenate([adjoint_A(cauchy_field(a), cfg.scheme).evaluate(X[i : i + 1]) for i, a in enumerate(A)])
    Bx = bergman_B(X, A)
    rows.append(Check.worst("bergman.B_equals_A_of_E", REF["AE"], AE, Bx, alg.norm(Bx), 1e-5))

    # norm coincidence on a shared sample set
    f = cauchy_field(DEFAULT_POLES[0])
    small = cfg.quad(n=min(cfg.n_samples, 200_000))
    ff = inner_ball(f, f, small)
    direct = ball_average(lambda X: alg.scalar(alg.norm2(f.fn(X))), small)
    rows.append(Check.compare("bergman.norm_is_real", REF["norm"], ff.value, alg.scalar(ff.value.re), 1e-12))
    rows.append(Check.compare("bergman.norm_coincides", REF["norm"], ff.value, direct.value, 1e-12))

    # T S^r against the boundary product, truncated at max_degree
    a, r = 0.3 * E[1], 0.9
    fr = f.restrict(r)
    Sr = szego_field(KernelParams(a, r))
    tq = cfg.quad(n=max(cfg.n_samples // 4, 1))
    lhs = inner_ball(fr, apply_T(Sr, RadialFitSpec(cfg.max_degree)), tq)
    rhs = inner_sphere(fr, Sr, tq)
    se = math.hypot(lhs.std_error, rhs.std_error)
    rows.append(Check.compare("bergman.T_szego_r", REF["T"], lhs.value, rhs.value, 4 * se, "abs", se))
    rows.append(Check.compare("bergman.szego_r_reproduces", "f(a)=r^7 (f_r,S^r(.,a))_{S^7}", rhs.value * r**7, cauchy_E2(a, DEFAULT_POLES[0]), 4 * rhs.std_error * r**7, "abs", rhs.std_error * r**7))

    rows.extend(norm_series_rows(cfg))
    return rows


def fueter_x1() -> Field:
    X = OctPoly.var
    return from_poly(X(1) - X(0) * alg.basis[1], "x1-x0e1")


def norm_series_rows(cfg: SuiteConfig) -> list[Check]:
    rows = []
    exact = QuadratureSpec("exact")
    for f, target in ((constant(alg.basis[0]), 1 / 8), (fueter_x1(), 1 / 40)):
        s = bergman_norm_series(f, RadialFitSpec(cfg.max_degree), exact)
        d = inner_ball(f, f, exact)
        rows.append(Check.compare(f"bergman.norm_series[{f.label}]", REF["series"], alg.scalar(s.value), alg.scalar(target), 1e-12, "abs"))
        rows.append(Check.compare(f"bergman.norm_direct[{f.label}]", REF["norm"], d.value, alg.scalar(target), 1e-12, "abs"))
    S = szego_field(KernelParams(0.3 * E[1]))
    quad = cfg.quad(n=max(cfg.n_samples // 4, 1))
    s = bergman_norm_series(S, RadialFitSpec(cfg.max_degree), quad)
    d = inner_ball(S, S, quad)
    se = math.hypot(s.std_error, d.std_error)
    rows.append(Check.compare("bergman.norm_series[S(.,0.3e1)]", REF["series"], alg.scalar(s.value), d.value, 4 * se, "abs", se))
    return rows


# counterexample / Parseval ------------------------------------------------------------


def counterexample_pair() -> tuple[Field, Field]:
    """``f = x1 - x0 e1`` (an inner part of degree 1) and ``g = conj(x) q(x) / |x|^12`` (outer, degree 2)."""
    X = OctPoly.var
    b = alg.basis
    q = X(1) * X(2) * b[4] + X(0) * X(2) * b[5] + X(0) * X(1) * b[6]

    def g_fn(Y):
        n2 = alg.norm2(Y)
        return alg.mul(alg.conj(Y), q(Y)) / (n2**6)[:, None]

    g = Field(g_fn, SingularSet.of(np.zeros(8), label="0"), "g", poly=OctPoly.identity().conj() * q, poly_domain="sphere")
    return fueter_x1(), g


COUNTER_VALUE = -alg.basis[6] / 40.0


def suite_counterexample(cfg: SuiteConfig) -> list[Check]:
    f, g = counterexample_pair()
    exact = inner_sphere(f, g, QuadratureSpec("exact"))
    rows = [Check.compare("counterexample.exact", REF["counter"], exact.value, COUNTER_VALUE, 1e-12, "abs")]
    if cfg.strategy != "exact":
        res = inner_sphere(f, g, cfg.quad())
        rows.append(_mc_row("counterexample.sampled", REF["counter"], res, COUNTER_VALUE))
    return rows


def suite_parseval(cfg: SuiteConfig) -> list[Check]:
    rows = []
    f, g = counterexample_pair()
    exact = QuadratureSpec("exact")

    # extraction recovers the declared single parts
    rng = _rng(cfg, 5)
    W = rng.standard_normal((64, 8))
    lspec = RadialFitSpec(3, "laurent")
    for fld, key in ((f, ("P", 1)), (g, ("Q", 2))):
        ex = radial_fit(fld, W, lspec)
        target = fld.fn(ex.directions)
        rows.append(Check.worst(f"parseval.extract_{key[0]}{key[1]}[{fld.label}]", "P_1f=f, Q_2g=g", ex.coeffs[key], target, 1.0, 1e-10))
        others = np.max([np.max(alg.norm(v)) for k, v in ex.coeffs.items() if k != key])
        rows.append(Check.compare(f"parseval.extract_rest[{fld.label}]", "P_1f=f, Q_2g=g", [others] + [0] * 7, np.zeros(8), 1e-10, "abs"))

    # exact block table with known parts
    tab = parseval_decompose({("P", 1): f}, {("Q", 2): g}, quad=exact)
    rows.append(Check.compare("parseval.exact_block_sum", REF["parseval"], tab.block_sum, tab.direct.value, 1e-12, "abs"))
    rows.append(Check.compare("parseval.exact_cross_block", REF["counter"], tab.blocks[("P", 1, "Q", 2)].value, COUNTER_VALUE, 1e-12, "abs"))

    h_parts = {("P", 1): f, ("Q", 2): g}
    t = parseval_decompose(h_parts, h_parts, quad=exact)
    norm2 = t.direct.value
    diag = sum(t.blocks[(k, d, k, d)].value.re for (k, d) in h_parts)
    cross = 2.0 * t.blocks[("P", 1, "Q", 2)].value.re
    rows.append(Check.compare("parseval.norm_identity_exact", REF["norm_split"], norm2, alg.scalar(diag + cross), 1e-12, "abs"))

    # disjoint inner degrees are orthogonal
    X = OctPoly.var
    g3 = from_poly((X(1) * X(2) * X(3) * X(4)).Dbar(), "Dbar(x1x2x3x4)")
    t13 = inner_sphere(f, g3, exact)
    rows.append(Check.compare("parseval.orthogonal_P1_P3", REF["parseval"], t13.value, np.zeros(8), 1e-12, "abs"))

    # sampled route: parts fitted per direction on the sampled sphere
    quad = cfg.quad(n=min(cfg.n_samples, 100_000))
    tab = parseval_decompose(f, g, lspec, quad)
    worst = max(tab.forbidden().values(), key=lambda v: v.value.norm())
    rows.append(Check.compare("parseval.forbidden_blocks_vanish", REF["parseval"], worst.value, np.zeros(8), max(4 * worst.std_error, 1e-9), "abs", worst.std_error))
    cb = tab.blocks[("P", 1, "Q", 2)]
    rows.append(_mc_row("parseval.cross_block_sampled", REF["counter"], cb, COUNTER_VALUE))
    rows.append(Check.compare("parseval.block_sum_equals_direct", REF["parseval"], tab.block_sum, tab.direct.value, 1e-9, "abs"))

    hf = f + g
    th = parseval_decompose(hf, hf, lspec, quad)
    diag = sum(v.value.re for key, v in th.blocks.items() if key[0] == key[2] and key[1] == key[3])
    cross = sum(2.0 * v.value.re for key, v in th.blocks.items() if key[0] == "P" and key[2] == "Q" and key[3] == key[1] + 1)
    rows.append(Check.compare("parseval.norm_identity_sampled", REF["norm_split"], th.direct.value, alg.scalar(diag + cross), 1e-9, "abs"))
    return rows


# unified formula --------------------------------------------------------------------------


def complex_square() -> Field:
    def fn(X):
        z = np.zeros_like(X)
        z[:, :2] = X[:, :2]
        return alg.mul(z, z)

    return Field(fn, label="z^2")


def unified_reproduce(f: Field, a, m: int, quad: QuadratureSpec):
    a = alg.as_array(a)

    def integrand(X):
        n2 = alg.norm2(X)
        return alg.mul(unified_kernel(X, a, m), alg.mul(X / n2[:, None], f.fn(X)))

    return ball_average(integrand, quad, dim=m)


def suite_unified(cfg: SuiteConfig) -> list[Check]:
    rows = []
    rng = _rng(cfg, 6)
    X = random_ball_points(rng, cfg.pairs, 0.05, 0.8)
    A = random_ball_points(rng, cfg.pairs, 0.0, 0.8)
    lhs, rhs = dbar_identity(X, A, cfg.scheme)
    rows.append(Check.worst("unified.dbar_identity", REF["dbar"], lhs, rhs, alg.norm(lhs), 1e-5))
    K8 = unified_kernel(X, A, 8)
    rows.append(Check.worst("unified.m8_matches_bergman", REF["dbar"], K8, lhs, alg.norm(lhs), 1e-12))
    rows.append(Check.worst("unified.m8_at_origin", "a=0: 8 conj(x)", unified_kernel(X, 0 * X, 8), 8 * alg.conj(X), alg.norm(X), 1e-12))
    Z = X.copy()
    Z[:, 2:] = 0
    rows.append(Check.worst("unified.m2_at_origin", "a=0: 2 conj(x)", unified_kernel(Z, 0 * Z, 2), 2 * alg.conj(Z), alg.norm(Z), 1e-12))

    quad = cfg.quad()
    a = 0.3 * E[0]
    res = unified_reproduce(complex_square(), a, 2, quad)
    rows.append(_mc_row("unified.m2_reproduces_z2", REF["unified"], res, 0.09 * E[0]))
    f = cauchy_field(DEFAULT_POLES[0])
    a8 = 0.3 * E[1]
    res = unified_reproduce(f, a8, 8, quad)
    rows.append(_mc_row("unified.m8_reproduces_E", REF["unified"], res, cauchy_E2(a8, DEFAULT_POLES[0])))
    return rows


RUNNERS: dict[str, Callable[[SuiteConfig], list[Check]]] = {
    "algebra": suite_algebra,
    "analyticity": suite_analyticity,
    "szego": suite_szego,
    "bergman": suite_bergman,
    "parseval": suite_parseval,
    "counterexample": suite_counterexample,
    "unified": suite_unified,
}


def run_suite(name: str, config: SuiteConfig | None = None, timing: bool = False) -> VerificationReport:
    """Run one named suite (or ``"all"``) and collect its rows.

    ``runtime_ms`` is recorded only with ``timing=True`` so that reports are
    reproducible byte for byte.
    """
    cfg = config or SuiteConfig()
    if name == "all":
        names: Sequence[str] = SUITES
    elif name in RUNNERS:
        names = (name,)
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    t0 = time.perf_counter()
    checks: list[Check] = []
    for n in names:
        checks.extend(RUNNERS[n](cfg))
    runtime = (time.perf_counter() - t0) * 1e3 if timing else None
    cfg_dict = cfg.to_dict()
    cfg_dict["package"] = __version__
    return VerificationReport(name, checks, cfg_dict, runtime)
