import numpy as np
import pytest

from octbergman import algebra as alg
from octbergman.polynomials import OctPoly, real_poly

X = OctPoly.var
e = alg.basis


def test_identity_evaluates_to_point(rng):
    P = rng.normal(size=(10, 8))
    assert np.allclose(OctPoly.identity()(P), P)


def test_product_matches_pointwise(rng):
    P = rng.normal(size=(20, 8))
    p = OctPoly.identity() * (X(1) * e[4] + X(2) * e[3])
    q = OctPoly.identity().conj()
    lhs = (q * p)(P)
    rhs = alg.mul(alg.conj(P), alg.mul(P, P[:, [1]] * e[4].coeffs + P[:, [2]] * e[3].coeffs))
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_dirac_of_x():
    x = OctPoly.identity()
    assert np.allclose(x.D()(np.zeros(8)), -6 * e[0].coeffs)
    assert np.allclose(x.Dbar()(np.zeros(8)), 8 * e[0].coeffs)


def test_fueter_polynomial_is_analytic():
    f = X(1) - X(0) * e[1]
    assert f.D().is_zero(1e-15)
    assert (X(1) * X(2) * X(3) * X(4)).Dbar().D().is_zero(1e-15)


def test_dbar_d_is_laplacian():
    r2 = real_poly({(2, 0, 0, 0, 0, 0, 0, 0): 1.0, (0, 2, 0, 0, 0, 0, 0, 0): 1.0, (0, 0, 0, 0, 0, 0, 0, 2): 1.0})
    assert np.allclose(r2.D().Dbar()(np.zeros(8)), 6 * e[0].coeffs)


def test_degree_and_parts():
    p = X(0) * X(1) * e[2] + X(3) + OctPoly.const(e[5])
    assert p.degree == 2
    assert p.homogeneous_part(1).degree == 1
    assert p.homogeneous_part(4).is_zero()
    assert (p - p).is_zero()


def test_bad_multidegree():
    with pytest.raises(ValueError):
        OctPoly({(1, 0): e[0]})
