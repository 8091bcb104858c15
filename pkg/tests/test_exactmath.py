from fractions import Fraction

from hypothesis import strategies as st, given
import pytest

from apollonite.exactmath import (GaussInt, HalfGauss, I, ONE, RatGauss,
                                  RatSym2, ZERO, gi_rot, hermite_basis,
                                  ratsym_apply, xgcd)

ints = st.integers(min_value=-60, max_value=60)
gauss = st.builds(GaussInt, ints, ints)
fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
ratsyms = st.builds(RatSym2, fractions, fractions, fractions)


@pytest.mark.parametrize("v,s,expected", [
    (GaussInt(1, 0), 1, GaussInt(0, 1)),
    (GaussInt(2, 1), 1, GaussInt(-1, 2)),
    (GaussInt(2, 1), 2, GaussInt(-2, -1)),
    (GaussInt(2, 1), 0, GaussInt(2, 1)),
    (GaussInt(2, 1), -1, GaussInt(1, -2)),
])
def test_gi_rot(v, s, expected):
    assert gi_rot(v, s) == expected


@given(v=gauss, s=st.integers(min_value=-8, max_value=8))
def test_rot_is_multiplication_by_i_power(v, s):
    expected = v
    for _ in range(s % 4):
        expected = I * expected
    assert v.rot(s) == expected


@pytest.mark.parametrize("A,v,expected", [
    (RatSym2(1, 0, 0), GaussInt(3, 4), (3, 0)),
    (RatSym2(Fraction(1, 4), Fraction(1, 2), 0), GaussInt(2, 1), (1, 1)),
    (RatSym2(Fraction(1, 4), Fraction(1, 2), 0), GaussInt(1, 0),
     (Fraction(1, 4), Fraction(1, 2))),
])
def test_ratsym_apply(A, v, expected):
    assert ratsym_apply(A, v) == expected


def test_ratsym_integrality():
    A = RatSym2(Fraction(1, 4), Fraction(1, 2), 0)
    assert A.is_integral_on(GaussInt(2, 1))
    assert not A.is_integral_on(ONE)


@given(a=gauss, b=gauss, c=gauss)
def test_gauss_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(a=gauss, b=gauss)
def test_norm_multiplicative(a, b):
    assert (a * b).norm() == a.norm() * b.norm()
    assert (a * a.conj()) == GaussInt(a.norm(), 0)


@given(a=gauss, b=gauss)
def test_dot_and_cross(a, b):
    assert a.dot(b) == (a.conj() * b).re
    assert a.cross(b) == (a.conj() * b).im
    assert a.cross(b) == -b.cross(a)


def test_gauss_rejects_non_integers():
    with pytest.raises(TypeError):
        GaussInt(Fraction(1, 2), 0)


@given(a=gauss, b=gauss)
def test_half_gauss(a, b):
    h = HalfGauss(a)
    assert (h + h).is_integral()
    assert (h + HalfGauss(b)).twice == a + b
    assert HalfGauss.from_gauss(a).to_gauss() == a


def test_half_gauss_to_gauss_rejects_halves():
    with pytest.raises(ValueError):
        HalfGauss(GaussInt(1, 0)).to_gauss()


@given(a=gauss)
def test_rat_gauss_division(a):
    assert (RatGauss.of(a * 3) / 3).to_gauss() == a
    assert RatGauss.of(a).conj() == RatGauss.of(a.conj())


@given(A=ratsyms, x=gauss, y=gauss)
def test_bilinear_symmetric(A, x, y):
    assert A.bilinear(x, y) == A.bilinear(y, x)
    assert A.bilinear(x, x) == A.quadratic_form(x)


@given(A=ratsyms, B=ratsyms)
def test_ratsym_linear(A, B):
    assert (A + B) - B == A
    assert A.scale(2) == A + A
    assert (A + B).trace == A.trace + B.trace


def test_is_psd():
    assert RatSym2(1, 0, 0).is_psd()
    assert RatSym2(0, 0, 0).is_psd()
    assert not RatSym2(1, 2, 1).is_psd()
    assert not RatSym2(-1, 0, 1).is_psd()


@given(a=st.integers(min_value=-500, max_value=500),
       b=st.integers(min_value=-500, max_value=500))
def test_xgcd(a, b):
    g, x, y = xgcd(a, b)
    assert g >= 0
    assert a * x + b * y == g
    if a or b:
        assert a % g == 0 and b % g == 0


@given(b1=gauss, b2=gauss)
def test_hermite_basis(b1, b2):
    det = b1.cross(b2)
    if det == 0:
        with pytest.raises(ValueError):
            hermite_basis(b1, b2)
        return
    alpha, beta, gamma = hermite_basis(b1, b2)
    assert alpha * gamma == abs(det)
    assert 0 <= beta < alpha
    # (alpha, 0) and (beta, gamma) lie in the lattice
    for x in (GaussInt(alpha, 0), GaussInt(beta, gamma)):
        m = Fraction(x.cross(b2), det)
        n = Fraction(b1.cross(x), det)
        assert m.denominator == 1 and n.denominator == 1
