"""Array layouts, direction conventions, spatial angles, and array response vectors.

Directions are azimuth/elevation pairs in the array's body frame: azimuth is
measured from the positive X-axis in the XOY-plane, elevation from the Z-axis.
The array itself sits in the YOZ-plane, so broadside is the +X direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "DirectionAngle",
    "ArrayGeometry",
    "SpatialAngles",
    "spatial_angles",
    "steering_vector",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DirectionAngle:
    """A propagation direction, canonicalized to az in [0, 2pi), el in [0, pi]."""

    azimuth_rad: float
    elevation_rad: float

    def __post_init__(self):
        az = float(self.azimuth_rad)
        el = float(self.elevation_rad) % _TWO_PI
        if el > math.pi:
            # polar angle beyond pi points "behind"; fold back through the Z-axis
            el = _TWO_PI - el
            az += math.pi
        az %= _TWO_PI
        object.__setattr__(self, "azimuth_rad", az)
        object.__setattr__(self, "elevation_rad", el)

    @classmethod
    def from_degrees(cls, az_deg: float, el_deg: float) -> "DirectionAngle":
        return cls(math.radians(az_deg), math.radians(el_deg))

    @property
    def azimuth_deg(self) -> float:
        return math.degrees(self.azimuth_rad)

    @property
    def elevation_deg(self) -> float:
        return math.degrees(self.elevation_rad)

    def unit_vector(self) -> np.ndarray:
        """Cartesian unit vector (x, y, z) for this direction."""
        se = math.sin(self.elevation_rad)
        return np.array(
            [
                se * math.cos(self.azimuth_rad),
                se * math.sin(self.azimuth_rad),
                math.cos(self.elevation_rad),
            ]
        )


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform planar array: n_horizontal x n_vertical elements in the YOZ-plane.

    Spacing is the inter-element distance in wavelengths (only the ratio d/lambda
    enters the phase response).  Elements are flattened horizontal-major: flat
    index i = h * n_vertical + v.
    """

    n_horizontal: int
    n_vertical: int
    spacing_wavelengths: float = 0.5

    def __post_init__(self):
        if self.n_horizontal < 1 or self.n_vertical < 1:
            raise ValueError("array dimensions must be positive")
        if not self.spacing_wavelengths > 0:
            raise ValueError("spacing_wavelengths must be positive")

    @property
    def num_elements(self) -> int:
        return self.n_horizontal * self.n_vertical

    @classmethod
    def linear(cls, n: int, spacing_wavelengths: float = 0.5) -> "ArrayGeometry":
        """A 1-D array along the horizontal dimension."""
        return cls(n, 1, spacing_wavelengths)


class SpatialAngles(NamedTuple):
    """Dimensionless horizontal/vertical spatial frequencies of a direction."""

    theta_h: float
    theta_v: float


def spatial_angles(geom: ArrayGeometry, direction: DirectionAngle) -> SpatialAngles:
    """Spatial frequencies seen by the array for a given direction.

    theta_h = (d/lambda) * sin(az) * sin(el), theta_v = (d/lambda) * cos(el).
    Both are bounded by d/lambda in magnitude.
    """
    d = geom.spacing_wavelengths
    return SpatialAngles(
        theta_h=d * math.sin(direction.azimuth_rad) * math.sin(direction.elevation_rad),
        theta_v=d * math.cos(direction.elevation_rad),
    )


def steering_vector(geom: ArrayGeometry, direction: DirectionAngle) -> np.ndarray:
    """Normalized array response vector of the array toward a direction.

    Returns a complex vector of length ``geom.num_elements`` with unit Euclidean
    norm: the Kronecker product of the horizontal and vertical phase ramps
    exp(-j 2 pi theta k), k = 0..n-1, scaled by 1/sqrt(N).  Entry ordering
    matches the horizontal-major flat layout of :class:`ArrayGeometry`.
    """
    th, tv = spatial_angles(geom, direction)
    ramp_h = np.exp(-2j * np.pi * th * np.arange(geom.n_horizontal))
    ramp_v = np.exp(-2j * np.pi * tv * np.arange(geom.n_vertical))
    return np.kron(ramp_h, ramp_v) / math.sqrt(geom.num_elements)
