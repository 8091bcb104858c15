#! /usr/bin/env python3
"""
This module provides exact Gaussian-integer, half-Gaussian, complex rational
and rational symmetric matrix arithmetic. No floating point values are used
anywhere in this module.

"""
from __future__ import annotations

import collections
import dataclasses
import fractions
from typing import Tuple, Union

Fraction = fractions.Fraction

RationalLike = Union[int, Fraction]

HermiteBasis = collections.namedtuple("HermiteBasis",
                                      ["alpha", "beta", "gamma"])


@dataclasses.dataclass(eq=True, frozen=True, order=True)
class GaussInt:
    """
    An element of Z[i], identified with the integer point (re, im) of Z².

    """
    __slots__ = ("re", "im",)

    re: int
    im: int

    def __post_init__(self):
        if not isinstance(self.re, int) or not isinstance(self.im, int):
            raise TypeError(
                f"GaussInt requires integer parts, got {self.re!r}, "
                f"{self.im!r}")

    def __repr__(self) -> str:
        return f"GaussInt({self.re}, {self.im})"

    def __str__(self) -> str:
        return f"{self.re}{self.im:+}i"

    @classmethod
    def from_int(cls, x: int) -> GaussInt:
        return cls(x, 0)

    def __add__(self, other: Union[int, GaussInt]) -> GaussInt:
        if isinstance(other, int):
            return GaussInt(self.re + other, self.im)
        if isinstance(other, GaussInt):
            return GaussInt(self.re + other.re, self.im + other.im)
        return NotImplemented

    def __radd__(self, other: int) -> GaussInt:
        return self + other

    def __sub__(self, other: Union[int, GaussInt]) -> GaussInt:
        if isinstance(other, (int, GaussInt)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: int) -> GaussInt:
        return (-self) + other

    def __neg__(self) -> GaussInt:
        return GaussInt(-self.re, -self.im)

    def __mul__(self, other: Union[int, GaussInt]) -> GaussInt:
        if isinstance(other, int):
            return GaussInt(self.re * other, self.im * other)
        if isinstance(other, GaussInt):
            return GaussInt(self.re * other.re - self.im * other.im,
                            self.re * other.im + self.im * other.re)
        return NotImplemented

    def __rmul__(self, other: int) -> GaussInt:
        return self * other

    def conj(self) -> GaussInt:
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        """
        Returns |v|² = v·conj(v).

        """
        return self.re * self.re + self.im * self.im

    def rot(self, s: int) -> GaussInt:
        """
        Multiplies by i^s.

        """
        return gi_rot(self, s)

    def dot(self, other: GaussInt) -> int:
        """
        The real inner product Re(conj(self)·other).

        """
        return self.re * other.re + self.im * other.im

    def cross(self, other: GaussInt) -> int:
        """
        The signed area Im(conj(self)·other); positive when other lies
        counter-clockwise of self.

        """
        return self.re * other.im - self.im * other.re

    def as_pair(self) -> Tuple[int, int]:
        return self.re, self.im


ZERO = GaussInt(0, 0)
ONE = GaussInt(1, 0)
I = GaussInt(0, 1)


def gi_rot(v: GaussInt, s: int) -> GaussInt:
    """
    Computes i^s · v exactly.

    Args:
        v (GaussInt): The Gaussian integer to rotate.
        s (int): The number of quarter turns, taken modulo 4.

    Returns:
        The rotated GaussInt.

    """
    s %= 4
    if s == 0:
        return v
    if s == 1:
        return GaussInt(-v.im, v.re)
    if s == 2:
        return GaussInt(-v.re, -v.im)
    return GaussInt(v.im, -v.re)


@dataclasses.dataclass(eq=True, frozen=True)
class HalfGauss:
    """
    An element of ½Z[i], stored as twice its value.

    """
    __slots__ = ("twice",)

    twice: GaussInt

    def __repr__(self) -> str:
        return f"HalfGauss({self.twice!r})"

    def __str__(self) -> str:
        return f"({self.twice})/2"

    @classmethod
    def from_gauss(cls, x: GaussInt) -> HalfGauss:
        return cls(x * 2)

    def __add__(self, other: Union[GaussInt, HalfGauss]) -> HalfGauss:
        if isinstance(other, HalfGauss):
            return HalfGauss(self.twice + other.twice)
        if isinstance(other, GaussInt):
            return HalfGauss(self.twice + other * 2)
        return NotImplemented

    def __radd__(self, other: GaussInt) -> HalfGauss:
        return self + other

    def __sub__(self, other: Union[GaussInt, HalfGauss]) -> HalfGauss:
        if isinstance(other, (GaussInt, HalfGauss)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: GaussInt) -> HalfGauss:
        return (-self) + other

    def __neg__(self) -> HalfGauss:
        return HalfGauss(-self.twice)

    def __mul__(self, other: Union[int, GaussInt]) -> HalfGauss:
        if isinstance(other, (int, GaussInt)):
            return HalfGauss(self.twice * other)
        return NotImplemented

    def __rmul__(self, other: Union[int, GaussInt]) -> HalfGauss:
        return self * other

    @property
    def re(self) -> Fraction:
        return Fraction(self.twice.re, 2)

    @property
    def im(self) -> Fraction:
        return Fraction(self.twice.im, 2)

    def is_integral(self) -> bool:
        return self.twice.re % 2 == 0 and self.twice.im % 2 == 0

    def to_gauss(self) -> GaussInt:
        """
        Converts to a GaussInt.

        Raises:
            ValueError

        """
        if not self.is_integral():
            raise ValueError(f"{self} is not a Gaussian integer")
        return GaussInt(self.twice.re // 2, self.twice.im // 2)


@dataclasses.dataclass(eq=True, frozen=True)
class RatGauss:
    """
    A complex number with exact rational real and imaginary parts.

    """
    __slots__ = ("re", "im",)

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __repr__(self) -> str:
        return f"RatGauss({self.re}, {self.im})"

    def __str__(self) -> str:
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"

    @classmethod
    def of(cls, x: Union[RationalLike, GaussInt, HalfGauss,
                         RatGauss]) -> RatGauss:
        if isinstance(x, RatGauss):
            return x
        if isinstance(x, GaussInt):
            return cls(Fraction(x.re), Fraction(x.im))
        if isinstance(x, HalfGauss):
            return cls(x.re, x.im)
        return cls(Fraction(x), Fraction(0))

    def __add__(self, other) -> RatGauss:
        try:
            other = RatGauss.of(other)
        except TypeError:
            return NotImplemented
        return RatGauss(self.re + other.re, self.im + other.im)

    def __radd__(self, other) -> RatGauss:
        return self + other

    def __sub__(self, other) -> RatGauss:
        try:
            other = RatGauss.of(other)
        except TypeError:
            return NotImplemented
        return RatGauss(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> RatGauss:
        return RatGauss.of(other) - self

    def __neg__(self) -> RatGauss:
        return RatGauss(-self.re, -self.im)

    def __mul__(self, other) -> RatGauss:
        try:
            other = RatGauss.of(other)
        except TypeError:
            return NotImplemented
        return RatGauss(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    def __rmul__(self, other) -> RatGauss:
        return self * other

    def __truediv__(self, other: RationalLike) -> RatGauss:
        if isinstance(other, (int, Fraction)):
            return RatGauss(self.re / other, self.im / other)
        return NotImplemented

    def conj(self) -> RatGauss:
        return RatGauss(self.re, -self.im)

    def is_integral(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def to_gauss(self) -> GaussInt:
        """
        Converts to a GaussInt.

        Raises:
            ValueError

        """
        if not self.is_integral():
            raise ValueError(f"{self} is not a Gaussian integer")
        return GaussInt(self.re.numerator, self.im.numerator)

    def as_pair(self) -> Tuple[Fraction, Fraction]:
        return self.re, self.im


@dataclasses.dataclass(eq=True, frozen=True)
class RatSym2:
    """
    A symmetric 2x2 matrix [[a11, a12], [a12, a22]] with rational entries.

    """
    __slots__ = ("a11", "a12", "a22",)

    a11: Fraction
    a12: Fraction
    a22: Fraction

    def __post_init__(self):
        for attr in RatSym2.__slots__:
            object.__setattr__(self, attr, Fraction(getattr(self, attr)))

    def __str__(self) -> str:
        return f"[[{self.a11}, {self.a12}], [{self.a12}, {self.a22}]]"

    def __add__(self, other: RatSym2) -> RatSym2:
        if not isinstance(other, RatSym2):
            return NotImplemented
        return RatSym2(self.a11 + other.a11, self.a12 + other.a12,
                       self.a22 + other.a22)

    def __sub__(self, other: RatSym2) -> RatSym2:
        if not isinstance(other, RatSym2):
            return NotImplemented
        return RatSym2(self.a11 - other.a11, self.a12 - other.a12,
                       self.a22 - other.a22)

    def scale(self, k: RationalLike) -> RatSym2:
        return RatSym2(self.a11 * k, self.a12 * k, self.a22 * k)

    @property
    def trace(self) -> Fraction:
        return self.a11 + self.a22

    @property
    def det(self) -> Fraction:
        return self.a11 * self.a22 - self.a12 * self.a12

    def is_psd(self) -> bool:
        return self.a11 >= 0 and self.a22 >= 0 and self.det >= 0

    def apply(self, v: GaussInt) -> Tuple[Fraction, Fraction]:
        return ratsym_apply(self, v)

    def quadratic_form(self, x: GaussInt) -> Fraction:
        """
        Returns xᵀAx.

        """
        return (self.a11 * x.re * x.re + 2 * self.a12 * x.re * x.im
                + self.a22 * x.im * x.im)

    def bilinear(self, x: GaussInt, y: GaussInt) -> Fraction:
        """
        Returns xᵀAy.

        """
        ax, ay = self.apply(y)
        return x.re * ax + x.im * ay

    def is_integral_on(self, v: GaussInt) -> bool:
        return all(c.denominator == 1 for c in self.apply(v))


def ratsym_apply(A: RatSym2, v: GaussInt) -> Tuple[Fraction, Fraction]:
    """
    Computes the matrix-vector product A·v.

    Args:
        A (RatSym2): The symmetric matrix.
        v (GaussInt): The vector.

    Returns:
        The product as a pair of Fractions.

    """
    return (A.a11 * v.re + A.a12 * v.im, A.a12 * v.re + A.a22 * v.im)


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Computes the extended greatest common divisor.

    Returns:
        A tuple (g, x, y) with g = a·x + b·y and g >= 0.

    """
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def hermite_basis(b1: GaussInt, b2: GaussInt) -> HermiteBasis:
    """
    Computes the Hermite normal form of the lattice spanned by b1 and b2.
    The lattice is then spanned by (alpha, 0) and (beta, gamma) with
    alpha·gamma = |det| and 0 <= beta < alpha.

    Args:
        b1 (GaussInt): The first basis vector.
        b2 (GaussInt): The second basis vector.

    Returns:
        The HermiteBasis namedtuple.

    Raises:
        ValueError

    """
    det = b1.cross(b2)
    if det == 0:
        raise ValueError(f"Degenerate lattice basis {b1}, {b2}")
    g, x, y = xgcd(b1.im, b2.im)
    w = b1 * x + b2 * y
    u = b1 * (b2.im // g) - b2 * (b1.im // g)
    alpha = abs(u.re)
    return HermiteBasis(alpha, w.re % alpha, g)
