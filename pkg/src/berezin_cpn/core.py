"""Configuration, chart points and the error types shared by every module."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb

import numpy as np

#: Default tolerance for deciding that two points are cut-locus related.
DEFAULT_TOL = 1e-9

#: Relative size of the first homogeneous coordinate below which a point
#: is treated as lying outside the big cell.
INFINITY_TOL = 1e-12


class CutLocusError(ValueError):
    """Raised when a quantity needs (e_Z, e_W) != 0 but W is in the cut locus of Z."""


class PointAtInfinityError(ValueError):
    """Raised when an operation needs a chart point but got a point outside the chart."""


class InvalidRayError(ValueError):
    """Raised for a zero vector where a projective ray is required."""


class NotUnitaryError(ValueError):
    """Raised for a matrix that is not in SU(n+1)."""


class UnsupportedDimensionError(ValueError):
    """Raised by the n = 1 only numerical routines."""


class DimensionMismatchError(ValueError):
    """Raised when an operator or vector does not match the model dimension."""


@dataclass(frozen=True)
class ModelConfig:
    """The space CP^n together with the line-bundle level N (Planck constant h = 1/N)."""

    n: int
    N: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"complex dimension n must be a positive integer, got {self.n!r}")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"level N must be a positive integer, got {self.N!r}")

    @cached_property
    def dim(self) -> int:
        return comb(self.n + self.N, self.n)

    @property
    def h(self) -> float:
        return 1.0 / self.N


@dataclass(frozen=True, eq=False)
class PointAtInfinity:
    """A point of CP^n outside the big cell, kept in homogeneous coordinates.

    The first homogeneous coordinate is (numerically) zero, so the point has
    no affine chart coordinates.
    """

    homogeneous: np.ndarray

    def __repr__(self):
        return f"PointAtInfinity({np.array2string(self.homogeneous, precision=6)})"


def is_at_infinity(point) -> bool:
    return isinstance(point, PointAtInfinity)


def chart_point(Z, n: int | None = None) -> np.ndarray:
    """Coerce `Z` to a 1-d complex array of chart coordinates and validate it."""
    if isinstance(Z, PointAtInfinity):
        raise PointAtInfinityError("point lies outside the chart; move the base point")
    Z = np.atleast_1d(np.asarray(Z, dtype=complex))
    if Z.ndim != 1:
        raise ValueError(f"chart point must be a vector, got shape {Z.shape}")
    if n is not None and Z.shape[0] != n:
        raise DimensionMismatchError(f"chart point has {Z.shape[0]} coordinates, expected {n}")
    if not np.all(np.isfinite(Z)):
        raise ValueError("chart point coordinates must be finite")
    return Z


def operator(A, cfg: ModelConfig) -> np.ndarray:
    """Validate a dense operator on the representation space of `cfg`."""
    A = np.asarray(A, dtype=complex)
    if A.shape != (cfg.dim, cfg.dim):
        raise DimensionMismatchError(
            f"operator has shape {A.shape}, expected {(cfg.dim, cfg.dim)} for n={cfg.n}, N={cfg.N}"
        )
    return A
