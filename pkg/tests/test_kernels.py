import numpy as np
import pytest

from octbergman import algebra as alg
from octbergman.algebra import Octonion, SingularityError
from octbergman.fields import DiffScheme, adjoint_A, apply_D
from octbergman.kernels import (
    KernelParams,
    UnsupportedDimensionError,
    bergman_B,
    bergman_field,
    cauchy_E,
    cauchy_E2,
    cauchy_field,
    dbar_identity,
    szego_field,
    szego_S,
    szego_Sr,
    unified_kernel,
)

e = alg.basis


def ball(rng, n, rmax):
    z = rng.normal(size=(n, 8))
    return z / alg.norm(z)[:, None] * rng.uniform(0, rmax, (n, 1))


def test_cauchy_examples():
    assert cauchy_E(2 * e[0]) == Octonion(0.0078125)
    assert cauchy_E2(e[1], e[2]).isclose((-e[1] + e[2]) / 16, 1e-15)
    with pytest.raises(SingularityError):
        cauchy_E(Octonion(0.0))
    with pytest.raises(SingularityError):
        cauchy_E2(e[3], e[3])


def test_szego_on_real_line():
    for t in (-0.5, 0.0, 0.3, 0.9):
        got = szego_S(t * e[0], e[0])
        assert np.allclose(got.coeffs, [(1 - t) ** -7] + [0] * 7, rtol=1e-12, atol=0)


def test_szego_r_at_origin():
    assert szego_Sr(e[2] * 0.2, Octonion(0.0), 0.5).isclose(Octonion(128.0), 1e-12)
    assert szego_Sr(0.3 * e[1], 0.2 * e[1], 1.0) == szego_S(0.3 * e[1], 0.2 * e[1])


def test_bergman_at_origin(rng):
    X = ball(rng, 10, 0.99)
    assert np.allclose(bergman_B(X, np.zeros(8)), 8 * e[0].coeffs, atol=1e-14)


def test_bergman_matches_adjoint(rng):
    X, A = ball(rng, 20, 0.8), ball(rng, 20, 0.8)
    X[alg.norm(X) < 0.2] *= 4
    got = np.concatenate([adjoint_A(cauchy_field(a)).evaluate(X[i : i + 1]) for i, a in enumerate(A)])
    B = bergman_B(X, A)
    assert np.max(alg.norm(got - B) / alg.norm(B)) < 1e-5


@pytest.mark.parametrize("make", [szego_field, bergman_field])
def test_kernels_left_analytic(rng, make):
    X = ball(rng, 30, 0.9)
    for a in (np.zeros(8), 0.4 * e[5].coeffs, ball(rng, 1, 0.8)[0]):
        f = make(KernelParams(a))
        assert np.max(alg.norm(apply_D(f).evaluate(X))) < 1e-5 * np.max(alg.norm(f.evaluate(X)))


def test_kernel_finite_on_many_pairs(rng):
    X, A = ball(rng, 100_000, 1.0), ball(rng, 100_000, 0.95)
    assert np.all(np.isfinite(bergman_B(X, A)))
    assert np.all(np.isfinite(szego_S(X, A)))


def test_dbar_identity(rng):
    X, A = ball(rng, 30, 0.8), ball(rng, 30, 0.8)
    lhs, rhs = dbar_identity(X, A, DiffScheme(1e-3))
    assert np.max(alg.norm(lhs - rhs) / alg.norm(lhs)) < 1e-5


def test_unified_m8_is_bergman_form(rng):
    X, A = ball(rng, 30, 0.9), ball(rng, 30, 0.9)
    lhs = alg.mul(alg.conj(bergman_B(X, A)), alg.conj(X))
    assert np.allclose(unified_kernel(X, A, 8), lhs, rtol=1e-12, atol=1e-12)


def test_unified_m2_matches_complex_bergman(rng):
    z = np.zeros((5, 8))
    z[:, :2] = rng.uniform(-0.6, 0.6, (5, 2))
    assert np.allclose(unified_kernel(z, np.zeros(8), 2), 2 * alg.conj(z))
    with pytest.raises(ValueError, match="span"):
        unified_kernel(e[2] * 0.1, Octonion(0.0), 2)
    with pytest.raises(UnsupportedDimensionError):
        unified_kernel(e[1] * 0.1, Octonion(0.0), 4)


def test_params_validation():
    with pytest.raises(ValueError):
        KernelParams(e[1])
    with pytest.raises(ValueError):
        KernelParams(0.5 * e[1], r=0.4)
    with pytest.raises(UnsupportedDimensionError):
        KernelParams(m=4)
    with pytest.raises(SingularityError):
        bergman_field(KernelParams(0.5 * e[1]))(2 * e[1])


def test_symmetry_probe_runs(rng):
    # |B(x,a)| against |B(a,x)|: recorded by scripts/symmetry_probe.py, only finiteness asserted here
    X, A = ball(rng, 50, 0.8), ball(rng, 50, 0.8)
    r = alg.norm(bergman_B(X, A)) / alg.norm(bergman_B(A, X))
    assert np.all(np.isfinite(r))
