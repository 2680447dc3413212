import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from octbergman import algebra as alg
from octbergman.algebra import TABLE, TRIPLES, Octonion, SingularityError, basis

octs = arrays(np.float64, 8, elements=st.floats(-10, 10, allow_nan=False))
e = basis


def close(a, b, scale=1.0, tol=1e-12):
    return float(alg.norm(alg.as_array(a) - alg.as_array(b))) <= tol * max(scale, 1.0)


@given(octs, octs)
def test_norm_multiplicative(x, y):
    assert np.isclose(alg.norm(alg.mul(x, y)), alg.norm(x) * alg.norm(y), rtol=1e-12, atol=1e-12)


@given(octs, octs)
def test_alternative(x, y):
    s = alg.norm(x) ** 2 * alg.norm(y)
    assert close(alg.associator(x, x, y), np.zeros(8), s)
    assert close(alg.associator(y, x, x), np.zeros(8), s)
    assert close(alg.associator(alg.conj(x), x, y), np.zeros(8), s)


@given(octs, octs, octs)
def test_associator_alternating(x, y, z):
    s = alg.norm(x) * alg.norm(y) * alg.norm(z)
    a = alg.associator(x, y, z)
    assert close(a, alg.associator(y, z, x), s)
    assert close(a, -alg.associator(y, x, z), s)
    assert close(a, -alg.associator(x, z, y), s)


@given(octs, octs)
def test_conjugation_reverses_products(x, y):
    s = alg.norm(x) * alg.norm(y)
    assert close(alg.conj(alg.mul(x, y)), alg.mul(alg.conj(y), alg.conj(x)), s)


@given(octs)
def test_x_times_conj_is_norm(x):
    n2 = alg.norm2(x)
    assert close(alg.mul(x, alg.conj(x)), alg.scalar(n2), n2)
    assert close(alg.mul(alg.conj(x), x), alg.scalar(n2), n2)


def test_table_triples():
    for p, q, r in TRIPLES:
        for u, v, w in ((p, q, r), (q, r, p), (r, p, q)):
            assert e[u] * e[v] == e[w]
            assert e[v] * e[u] == -e[w]
    for i in range(1, 8):
        assert e[i] * e[i] == -e[0]
        assert e[0] * e[i] == e[i] * e[0] == e[i]


def test_table_is_complete():
    # every ordered pair of distinct imaginary units appears exactly once up to sign
    seen = set()
    for i in range(1, 8):
        for j in range(1, 8):
            if i != j:
                k = TABLE.index[i, j]
                assert k not in (0, i, j)
                assert TABLE.sign[i, j] == -TABLE.sign[j, i]
                seen.add((i, j))
    assert len(seen) == 42


def test_spec_products():
    assert e[1] * e[2] == e[3]
    assert e[1] * e[6] == -e[7]
    assert alg.associator(e[1], e[2], e[4]) == 2 * e[7]


def test_inverse():
    x = Octonion(1, 1, 0, 0, 0, 0, 0, 0)
    assert x.inverse().isclose((e[0] - e[1]) / 2)
    with pytest.raises(SingularityError, match="zero divisor"):
        Octonion(0.0).inverse()
    with pytest.raises(SingularityError):
        alg.inverse(np.zeros((3, 8)))


def test_octonion_interface():
    x = Octonion(np.arange(8.0))
    assert x.re == 0.0
    assert x.vec == x
    assert (2 * x - x) == x
    assert np.array_equal(np.asarray(x), np.arange(8.0))
    assert Octonion(3.0) == 3 * e[0]
    assert hash(Octonion(1.0)) == hash(e[0])
    with pytest.raises(ValueError):
        Octonion(1, 2, 3)
    with pytest.raises(AttributeError):
        x.foo = 1


def test_bracketing_kept():
    # the two nestings differ by the associator 2e7
    assert (e[1] * e[2]) * e[4] - e[1] * (e[2] * e[4]) == 2 * e[7]


def test_batched_mul_matches_scalar(rng):
    X, Y = rng.normal(size=(2, 50, 8))
    Z = alg.mul(X, Y)
    for i in range(0, 50, 7):
        assert np.allclose(Z[i], (Octonion(X[i]) * Octonion(Y[i])).coeffs, atol=1e-14)
