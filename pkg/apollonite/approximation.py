#! /usr/bin/env python3
"""
Integer approximation of positive semidefinite quadratic forms: an integer
function g with Δg >= 0 lying within |x| + 1 of ½xᵀAx, obtained as a
supremum of affine minorants of ⌊q(y) + |y|⌋.

"""
import logging
import math
from typing import List, Set, Tuple

import numpy as np

from .exactmath import Fraction, GaussInt, RatSym2
from .exceptions import TruncationError
from .odometer import Rect
from .reports import CheckReport


LOGGER = logging.getLogger(__name__)

# The denominator of the off-diagonal entry of a clamped matrix.
CLAMP_DENOMINATOR = 1024


def clamp_psd(A: RatSym2) -> RatSym2:
    """
    A positive semidefinite matrix below-or-near A: negative diagonal
    entries are raised to 0 and an off-diagonal entry too large for the
    diagonal is shrunk to sign·isqrt(⌊a11 a22 D²⌋)/D.

    """
    a11, a22 = max(A.a11, Fraction(0)), max(A.a22, Fraction(0))
    a12 = A.a12
    if a12 * a12 > a11 * a22:
        bound = math.isqrt(math.floor(a11 * a22 * CLAMP_DENOMINATOR ** 2))
        a12 = Fraction(bound if a12 > 0 else -bound, CLAMP_DENOMINATOR)
    return RatSym2(a11, a12, a22)


def _floor_q_plus_norm(A: RatSym2, y: GaussInt) -> int:
    # ⌊q(y) + |y|⌋ exactly, with q(y) = n/d
    q = A.quadratic_form(y) / 2
    n, d = q.numerator, q.denominator
    return (n + math.isqrt(d * d * y.norm())) // d


def _gradients(A: RatSym2, window: Rect) -> List[Tuple[int, int]]:
    slopes: Set[Tuple[int, int]] = set()
    for x in window.points():
        gx, gy = A.apply(x)
        slopes.add((math.floor(gx), math.floor(gy)))
    return sorted(slopes)


def _sup_inf(A: RatSym2, window: Rect, pad: int) -> np.ndarray:
    slopes = _gradients(A, window)
    ys = Rect(window.x0 - pad, window.y0 - pad, window.x1 + pad,
              window.y1 + pad)
    yx, yy = ys.grid()
    floors = np.array([[_floor_q_plus_norm(A, GaussInt(int(a), int(b)))
                        for a, b in zip(row_x, row_y)]
                       for row_x, row_y in zip(yx, yy)], dtype=np.int64)
    xs, xys = window.grid()
    result = np.full(xs.shape, np.iinfo(np.int64).min, dtype=np.int64)
    for px, py in slopes:
        low = int((floors - px * yx - py * yy).min())
        np.maximum(result, low + px * xs + py * xys, out=result)
    return result


def psd_integer_approx(A: RatSym2, window: Rect) -> np.ndarray:
    """
    Computes g(x) = sup_p inf_y ⌊q(y) + |y|⌋ + p·(x - y) on the window,
    with p ranging over ⌊A x⌋ for window vertices x and y over the window
    padded by one diameter. The values are recomputed with y padded by two
    diameters; a change means the truncation was too tight.

    Args:
        A (RatSym2): A positive semidefinite matrix.
        window (Rect): The vertices to compute.

    Returns:
        The values, indexed [y - y0, x - x0].

    Raises:
        ValueError
        TruncationError

    """
    if not A.is_psd():
        raise ValueError(f"{A} is not positive semidefinite")
    diameter = max(window.width, window.height)
    values = _sup_inf(A, window, diameter)
    check = _sup_inf(A, window, 2 * diameter)
    if not np.array_equal(values, check):
        raise TruncationError(f"Truncated approximation of {A} changes "
                              "when the range of y is enlarged")
    LOGGER.debug(f"Approximated {A} on {window}")
    return values


def approximation_report(A: RatSym2, window: Rect,
                         values: np.ndarray) -> CheckReport:
    """
    Checks Δg >= 0 at every interior window vertex and |g(x) - ½xᵀAx| <=
    |x| + 1 at every vertex.

    """
    failures = []
    lap = (values[:-2, 1:-1] + values[2:, 1:-1] + values[1:-1, :-2]
           + values[1:-1, 2:] - 4 * values[1:-1, 1:-1])
    for r, c in np.argwhere(lap < 0)[:10]:
        failures.append(f"Δg < 0 at ({c + 1 + window.x0}, "
                        f"{r + 1 + window.y0})")
    for x in window.points():
        gx = int(values[x.im - window.y0, x.re - window.x0])
        excess = abs(gx - A.quadratic_form(x) / 2) - 1
        # excess <= |x| exactly
        if excess > 0 and excess * excess > x.norm():
            failures.append(f"|g - q| > |x| + 1 at {x}")
    return CheckReport.from_failures("psd_approximation", values.size,
                                     failures)
