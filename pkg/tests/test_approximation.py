from fractions import Fraction

from hypothesis import strategies as st, given, settings
import numpy as np
import pytest

from apollonite.approximation import (approximation_report, clamp_psd,
                                      psd_integer_approx)
from apollonite.exactmath import RatSym2
from apollonite.latvec import peak_matrix
from apollonite.odometer import Rect
from apollonite.packing import Circle

fractions = st.fractions(min_value=-3, max_value=3, max_denominator=8)


def test_zero_form():
    values = psd_integer_approx(RatSym2(0, 0, 0), Rect.centered(5, 5))
    assert values.shape == (5, 5)
    assert not values.any()


@pytest.mark.parametrize("A", [
    RatSym2(1, 0, 1),
    RatSym2(1, 0, 0),
    RatSym2(Fraction(1, 2), Fraction(1, 4), Fraction(1, 3)),
])
def test_approximation_report(A):
    window = Rect.centered(7, 7)
    values = psd_integer_approx(A, window)
    report = approximation_report(A, window, values)
    assert report.passed, report.failures


def test_approximation_is_subharmonic():
    values = psd_integer_approx(RatSym2(Fraction(2, 3), Fraction(-1, 5), 1),
                                Rect.centered(9, 7))
    lap = (values[:-2, 1:-1] + values[2:, 1:-1] + values[1:-1, :-2]
           + values[1:-1, 2:] - 4 * values[1:-1, 1:-1])
    assert (lap >= 0).all()


def test_non_psd_is_rejected():
    with pytest.raises(ValueError):
        psd_integer_approx(RatSym2(1, 2, 1), Rect.centered(3, 3))


def test_clamp_psd():
    assert clamp_psd(RatSym2(1, 2, 1)) == RatSym2(1, 1, 1)
    assert clamp_psd(RatSym2(-1, 0, 1)) == RatSym2(0, 0, 1)
    assert clamp_psd(RatSym2(-1, 1, -2)) == RatSym2(0, 0, 0)
    psd = RatSym2(2, 1, 1)
    assert clamp_psd(psd) == psd


@given(a11=fractions, a12=fractions, a22=fractions)
@settings(max_examples=50)
def test_clamp_psd_gives_psd(a11, a12, a22):
    clamped = clamp_psd(RatSym2(a11, a12, a22))
    assert clamped.is_psd()
    assert abs(clamped.a12) <= abs(a12)


def test_report_flags_bad_values():
    window = Rect.centered(3, 3)
    values = np.zeros((3, 3), dtype=np.int64)
    values[1, 1] = 1
    report = approximation_report(RatSym2(0, 0, 0), window, values)
    assert not report.passed


@pytest.mark.slow
@pytest.mark.parametrize("A", [
    RatSym2(0, 0, 0),
    RatSym2(1, 0, 1),
    RatSym2(Fraction(1, 2), 0, Fraction(1, 2)),
    clamp_psd(peak_matrix(Circle.of(4, 1, 4))),
])
def test_approximation_on_a_large_window(A):
    window = Rect.centered(41, 41)
    values = psd_integer_approx(A, window)
    report = approximation_report(A, window, values)
    assert report.passed, report.failures
