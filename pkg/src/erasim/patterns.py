"""Element radiation patterns, the pattern dictionary, and selection matrices.

Pattern values are linear field amplitudes (they multiply the complex per-path
channel gain), so dB conversions use 20 log10.  All patterns are real and
nonnegative; a pattern with phase is outside this model.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .geometry import DirectionAngle

__all__ = [
    "ElementPattern",
    "IsotropicPattern",
    "SteeredCosinePattern",
    "TabulatedPattern",
    "PatternDictionary",
    "PatternDomainError",
    "PatternFileError",
    "load_tabulated_pattern",
    "selection_matrix",
    "default_dictionary",
    "amplitude_from_dbi",
    "dbi_from_amplitude",
]


class PatternDomainError(ValueError):
    """A tabulated pattern was queried outside its grid coverage."""


class PatternFileError(ValueError):
    """A pattern grid file could not be parsed."""


def amplitude_from_dbi(gain_dbi: float) -> float:
    """Linear field amplitude for a gain in dBi (20 log10 convention)."""
    return 10.0 ** (gain_dbi / 20.0)


def dbi_from_amplitude(amplitude: float) -> float:
    return 20.0 * math.log10(amplitude)


class ElementPattern:
    """Base class: a real, nonnegative gain as a function of direction."""

    def evaluate(self, direction: DirectionAngle) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class IsotropicPattern(ElementPattern):
    amplitude: float = 1.0

    def evaluate(self, direction: DirectionAngle) -> float:
        return self.amplitude


@dataclass(frozen=True)
class SteeredCosinePattern(ElementPattern):
    """Power-cosine lobe: peak * max(0, cos(delta))**exponent.

    ``delta`` is the great-circle angle between the query direction and the
    boresight; the back hemisphere is clamped to zero.
    """

    boresight: DirectionAngle
    exponent: float = 2.0
    peak_amplitude: float = 1.0

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("exponent must be nonnegative")
        if not self.peak_amplitude > 0:
            raise ValueError("peak_amplitude must be positive")

    def evaluate(self, direction: DirectionAngle) -> float:
        cos_delta = float(np.dot(self.boresight.unit_vector(), direction.unit_vector()))
        cos_delta = min(1.0, max(-1.0, cos_delta))
        return self.peak_amplitude * max(0.0, cos_delta) ** self.exponent


class TabulatedPattern(ElementPattern):
    """Pattern sampled on a rectangular (az, el) grid, bilinearly interpolated.

    Samples are linear amplitudes; queries outside the grid raise
    :class:`PatternDomainError` (no extrapolation).
    """

    def __init__(self, az_deg: np.ndarray, el_deg: np.ndarray, amplitude: np.ndarray):
        az_deg = np.asarray(az_deg, dtype=float)
        el_deg = np.asarray(el_deg, dtype=float)
        amplitude = np.asarray(amplitude, dtype=float)
        if az_deg.ndim != 1 or el_deg.ndim != 1:
            raise ValueError("grid axes must be one-dimensional")
        if amplitude.shape != (az_deg.size, el_deg.size):
            raise ValueError("amplitude grid shape must be (n_az, n_el)")
        if np.any(np.diff(az_deg) <= 0) or np.any(np.diff(el_deg) <= 0):
            raise ValueError("grid axes must be strictly increasing")
        if np.any(~np.isfinite(amplitude)) or np.any(amplitude < 0):
            raise ValueError("amplitudes must be finite and nonnegative")
        self.az_deg = az_deg
        self.el_deg = el_deg
        self.amplitude = amplitude
        self._interp = RegularGridInterpolator(
            (az_deg, el_deg), amplitude, method="linear", bounds_error=True
        )

    def evaluate(self, direction: DirectionAngle) -> float:
        query = (direction.azimuth_deg, direction.elevation_deg)
        try:
            return float(self._interp(query))
        except ValueError as exc:
            raise PatternDomainError(
                f"direction az={query[0]:.3f} deg, el={query[1]:.3f} deg is outside "
                f"the tabulated grid (az {self.az_deg[0]}..{self.az_deg[-1]}, "
                f"el {self.el_deg[0]}..{self.el_deg[-1]})"
            ) from exc


def load_tabulated_pattern(path) -> TabulatedPattern:
    """Read a pattern grid CSV with header ``az_deg,el_deg,gain_dbi``.

    Rows must cover a rectangular grid in row-major order (azimuth outer,
    elevation inner) with strictly increasing axes.  Gains are converted from
    dBi to linear amplitude.  Malformed input raises :class:`PatternFileError`
    naming the offending line.
    """
    rows: list[tuple[float, float, float]] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip() for c in header] != ["az_deg", "el_deg", "gain_dbi"]:
            raise PatternFileError(f"{path}: line 1: expected header 'az_deg,el_deg,gain_dbi'")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise PatternFileError(f"{path}: line {lineno}: expected 3 columns, got {len(row)}")
            try:
                az, el, dbi = (float(v) for v in row)
            except ValueError:
                raise PatternFileError(f"{path}: line {lineno}: non-numeric value") from None
            if math.isnan(az) or math.isnan(el) or math.isnan(dbi):
                raise PatternFileError(f"{path}: line {lineno}: NaN value")
            rows.append((az, el, dbi))
    if not rows:
        raise PatternFileError(f"{path}: no data rows")

    first_az = rows[0][0]
    n_el = 1
    while n_el < len(rows) and rows[n_el][0] == first_az:
        n_el += 1
    if len(rows) % n_el != 0:
        raise PatternFileError(f"{path}: {len(rows)} rows do not form a rectangular grid")
    n_az = len(rows) // n_el

    az_axis = np.array([rows[i * n_el][0] for i in range(n_az)])
    el_axis = np.array([rows[j][1] for j in range(n_el)])
    if np.any(np.diff(az_axis) <= 0):
        raise PatternFileError(f"{path}: azimuth axis is not strictly increasing")
    if np.any(np.diff(el_axis) <= 0):
        raise PatternFileError(f"{path}: elevation axis is not strictly increasing")

    amplitude = np.empty((n_az, n_el))
    for i in range(n_az):
        for j in range(n_el):
            az, el, dbi = rows[i * n_el + j]
            if az != az_axis[i] or el != el_axis[j]:
                lineno = i * n_el + j + 2
                raise PatternFileError(f"{path}: line {lineno}: row breaks the rectangular grid order")
            amplitude[i, j] = amplitude_from_dbi(dbi)
    return TabulatedPattern(az_axis, el_axis, amplitude)


@dataclass(frozen=True)
class PatternDictionary:
    """The ordered, finite set of radiation patterns an element can select."""

    patterns: tuple[ElementPattern, ...]

    def __post_init__(self):
        if len(self.patterns) < 1:
            raise ValueError("dictionary must hold at least one pattern")
        object.__setattr__(self, "patterns", tuple(self.patterns))

    def __len__(self) -> int:
        return len(self.patterns)

    def __getitem__(self, index: int) -> ElementPattern:
        return self.patterns[index]

    def evaluate(self, direction: DirectionAngle) -> np.ndarray:
        """Gain vector of all patterns toward a direction, in dictionary order."""
        return np.array([p.evaluate(direction) for p in self.patterns])


def default_dictionary(
    boresights_az_deg: Sequence[float] = (45.0, 90.0, 135.0),
    boresight_el_deg: float = 90.0,
    exponent: float = 2.0,
    peak_dbi: float = 8.0,
) -> PatternDictionary:
    """Synthetic left/forward/right dictionary of steered power-cosine lobes."""
    peak = amplitude_from_dbi(peak_dbi)
    return PatternDictionary(
        tuple(
            SteeredCosinePattern(
                boresight=DirectionAngle.from_degrees(az, boresight_el_deg),
                exponent=exponent,
                peak_amplitude=peak,
            )
            for az in boresights_az_deg
        )
    )


def selection_matrix(indices: Sequence[int], n_patterns: int) -> np.ndarray:
    """Block-diagonal binary selection matrix for one pattern choice per element.

    Row i of the (n_elements, n_elements * n_patterns) result is the unit basis
    vector at column i * n_patterns + indices[i]; rows are orthonormal, so
    B @ B.T is the identity.
    """
    indices = list(indices)
    mat = np.zeros((len(indices), len(indices) * n_patterns))
    for i, idx in enumerate(indices):
        if not 0 <= idx < n_patterns:
            raise ValueError(
                f"selection index {idx} for element {i} is out of range for a "
                f"dictionary of size {n_patterns}"
            )
        mat[i, i * n_patterns + idx] = 1.0
    return mat
