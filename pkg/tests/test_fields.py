import numpy as np
import pytest

from octbergman import algebra as alg
from octbergman.algebra import SingularityError
from octbergman.fields import (
    DiffScheme,
    Field,
    SingularSet,
    adjoint_A,
    apply_D,
    apply_Dbar,
    constant,
    from_poly,
    identity,
    kelvin,
    laplacian,
    partials,
)
from octbergman.kernels import cauchy_E, cauchy_field
from octbergman.polynomials import OctPoly, real_poly

e = alg.basis


@pytest.fixture
def pts(rng):
    return rng.uniform(-0.6, 0.6, (40, 8))


def test_D_and_Dbar_of_identity(pts):
    assert np.allclose(apply_D(identity()).evaluate(pts), -6 * e[0].coeffs, atol=1e-9)
    assert np.allclose(apply_Dbar(identity()).evaluate(pts), 8 * e[0].coeffs, atol=1e-9)


def test_laplacian_of_norm_squared(pts):
    r2 = Field(lambda X: alg.scalar(alg.norm2(X)), label="|x|^2")
    assert np.allclose(laplacian(r2).evaluate(pts), 16 * e[0].coeffs, atol=1e-5)


def test_dbar_d_is_laplacian(pts):
    r2 = Field(lambda X: alg.scalar(alg.norm2(X)), label="|x|^2")
    s = DiffScheme(1e-3)
    assert np.allclose(apply_Dbar(apply_D(r2, s), s).evaluate(pts), 16 * e[0].coeffs, atol=1e-6)


def test_fd_second_order(rng):
    X = rng.uniform(0.5, 1.0, (30, 8))
    E0 = cauchy_field()
    exact = -8.0 * alg.conj(X) * X[:, :1] / alg.norm2(X)[:, None] ** 5
    exact[:, 0] += 1.0 / alg.norm2(X) ** 4
    errs = []
    for h in (1e-2, 5e-3):
        d = partials(E0, X, DiffScheme(h, "central", relative=False))[:, 0]
        errs.append(np.max(alg.norm(d - exact)))
    assert 1.9 < np.log2(errs[0] / errs[1]) < 2.1


def test_richardson_beats_central(rng):
    X = rng.uniform(0.5, 1.0, (30, 8))
    E0 = cauchy_field()
    c = alg.norm(apply_D(E0, DiffScheme(1e-2, "central")).evaluate(X)).max()
    r = alg.norm(apply_D(E0, DiffScheme(1e-2, "richardson")).evaluate(X)).max()
    assert r < c / 50


def test_kelvin_of_unit_is_cauchy(rng):
    X = rng.normal(size=(20, 8))
    assert np.allclose(kelvin(constant(e[0])).evaluate(X), cauchy_E(X), rtol=1e-13, atol=0)


def test_adjoint_of_unit(rng):
    X = rng.uniform(-1, 1, (20, 8))
    expected = -6 * alg.conj(X) / alg.norm2(X)[:, None] ** 4
    got = adjoint_A(constant(e[0])).evaluate(X)
    assert np.allclose(got, expected, rtol=1e-7)
    # independent route: Dbar of the real field |x|^-6
    inv6 = Field(lambda Y: alg.scalar(alg.norm2(Y) ** -3))
    assert np.allclose(got, apply_Dbar(inv6).evaluate(X), rtol=1e-10)


def test_adjoint_of_cauchy_at_origin(rng):
    X = rng.uniform(-0.5, 0.5, (20, 8))
    assert np.allclose(adjoint_A(cauchy_field()).evaluate(X), 8 * e[0].coeffs, atol=1e-7)


def test_singular_set_raises():
    E0 = cauchy_field()
    with pytest.raises(SingularityError, match="singular set"):
        E0(np.zeros(8))
    with pytest.raises(SingularityError):
        partials(E0, np.full((1, 8), 1e-5), DiffScheme(1e-3))
    s = SingularSet.of(e[1], radius=0.1, label="pole")
    with pytest.raises(SingularityError, match="pole"):
        s.check(np.array([[0, 1.05, 0, 0, 0, 0, 0, 0]]))


def test_bad_scheme():
    with pytest.raises(ValueError):
        DiffScheme(0.0)
    with pytest.raises(ValueError):
        DiffScheme(1e-3, "forward")


def test_field_products_keep_bracketing():
    f1, f2, f4 = (constant(e[i]) for i in (1, 2, 4))
    x = alg.Octonion(0.0)
    assert ((f1 * f2) * f4)(x) - (f1 * (f2 * f4))(x) == 2 * e[7]


def test_field_arithmetic_and_poly(rng):
    X = rng.normal(size=(5, 8))
    p = OctPoly.var(1) - OctPoly.var(0) * e[1]
    f = from_poly(p)
    g = (f + f).scale(0.5) - f.left(e[0])
    assert np.allclose(g.evaluate(X), 0)
    assert (f + f).poly is not None
    assert np.allclose(f.conj().evaluate(X), alg.conj(p(X)))
    assert np.allclose(f.restrict(0.5).evaluate(X), p(0.5 * X))
    assert isinstance(f(alg.Octonion(np.ones(8))), alg.Octonion)
