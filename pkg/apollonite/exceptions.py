#! /usr/bin/env python3
"""
This module defines the exceptions raised when a construction or a check
fails.

"""


class ApolloniteError(Exception):
    """
    The base class for all apollonite exceptions.

    """


class DescartesError(ApolloniteError):
    """
    An exception to be thrown when four circles violate the curvature or
    complex Descartes identity.

    """


class TangencyError(ApolloniteError):
    """
    An exception to be thrown when two circles expected to be tangent are
    not.

    """


class LatticeMismatchError(ApolloniteError):
    """
    An exception to be thrown when the lattice generated by the vector
    recursion differs from the lattice of integral peak matrix products.

    """


class TileError(ApolloniteError):
    """
    An exception to be thrown when a tile fails to be assembled, or fails
    its area, disk or symmetry checks.

    """


class GluingError(ApolloniteError):
    """
    An exception to be thrown when subodometers cannot be glued into a tile
    odometer, or a tile odometer cannot be extended periodically.

    """


class VerificationError(ApolloniteError):
    """
    An exception to be thrown when a check needs the tile of an odometer
    but the odometer carries none, as for the closed-form Ford and diamond
    odometers.

    """


class TruncationError(ApolloniteError):
    """
    An exception to be thrown when the truncated sup-inf formula changes
    under enlargement of its search ranges.

    """


class SandpileError(ApolloniteError):
    """
    An exception to be thrown when the sandpile grid is too small to
    contain the stabilization.

    """
