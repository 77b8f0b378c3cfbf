"""Analog precoders, beampattern synthesis, link metrics, and pattern selection.

Weight vectors model analog phase-shifter feeds: every entry has squared
modulus 1/len.  Beampattern values are linear power intensities relative to a
single isotropic element fed with full power (intensity 1 is 0 dB).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .geometry import ArrayGeometry, DirectionAngle, steering_vector
from .patterns import PatternDictionary

__all__ = [
    "LinkBudget",
    "BeampatternSamples",
    "SidelobeMetrics",
    "SearchSpaceError",
    "matched_precoder",
    "phase_gradient_precoder",
    "azimuth_cut",
    "beampattern",
    "receive_signal",
    "snr_and_rate",
    "select_patterns_greedy",
    "select_patterns_exhaustive",
    "sidelobe_metrics",
    "peak_in_window",
    "power_db",
]


class SearchSpaceError(ValueError):
    """The exhaustive selection search space exceeds its guard."""


@dataclass(frozen=True)
class LinkBudget:
    """Transmit power and noise variance, both linear watts."""

    transmit_power: float
    noise_variance: float

    def __post_init__(self):
        if not self.transmit_power > 0:
            raise ValueError("transmit_power must be positive")
        if not self.noise_variance > 0:
            raise ValueError("noise_variance must be positive")


def power_db(value: float) -> float:
    """Power intensity in dB; zero maps to -inf."""
    return 10.0 * math.log10(value) if value > 0 else float("-inf")


def matched_precoder(geom: ArrayGeometry, direction: DirectionAngle) -> np.ndarray:
    """Constant-modulus feed whose phases align every element at ``direction``.

    Each weight conjugate-matches the array response phase, so every element's
    contribution toward the target is real and positive.
    """
    a = steering_vector(geom, direction)
    return np.exp(1j * np.angle(a)) / math.sqrt(geom.num_elements)


def phase_gradient_precoder(n: int, step_rad: float) -> np.ndarray:
    """Feed with a fixed phase step between adjacent elements: exp(-j k step)/sqrt(n)."""
    if n < 1:
        raise ValueError("element count must be positive")
    return np.exp(-1j * step_rad * np.arange(n)) / math.sqrt(n)


@dataclass(frozen=True)
class BeampatternSamples:
    """Power intensity sampled over a direction grid."""

    directions: tuple[DirectionAngle, ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "directions", tuple(self.directions))
        values = np.asarray(self.values, dtype=float)
        if len(self.directions) != values.size:
            raise ValueError("grid and value lengths must match")
        if np.any(values < 0):
            raise ValueError("intensities must be nonnegative")
        object.__setattr__(self, "values", values)

    def azimuths_deg(self) -> np.ndarray:
        return np.array([d.azimuth_deg for d in self.directions])

    def elevations_deg(self) -> np.ndarray:
        return np.array([d.elevation_deg for d in self.directions])

    def values_db(self) -> np.ndarray:
        return np.array([power_db(v) for v in self.values])


def azimuth_cut(
    start_deg: float = 0.0,
    stop_deg: float = 180.0,
    step_deg: float = 0.25,
    el_deg: float = 90.0,
) -> tuple[DirectionAngle, ...]:
    """Uniform azimuth grid at fixed elevation, endpoints included."""
    if step_deg <= 0:
        raise ValueError("step_deg must be positive")
    count = int(round((stop_deg - start_deg) / step_deg)) + 1
    return tuple(
        DirectionAngle.from_degrees(az, el_deg)
        for az in np.linspace(start_deg, stop_deg, count)
    )


def beampattern(
    geom: ArrayGeometry,
    dictionary: PatternDictionary,
    selection: Sequence[int],
    weights: np.ndarray,
    grid: Sequence[DirectionAngle],
) -> BeampatternSamples:
    """Far-field power intensity of a feed and pattern selection over a grid.

    Each sample is |sum_i g_i(dir) conj(a_i(dir)) f_i|^2 with g_i the selected
    pattern's gain; samples are computed independently per grid point.
    """
    if len(grid) == 0:
        raise ValueError("grid must be nonempty")
    selection = np.asarray(selection, dtype=int)
    if selection.shape != (geom.num_elements,):
        raise ValueError("selection length must match the element count")
    values = np.empty(len(grid))
    for k, direction in enumerate(grid):
        a = steering_vector(geom, direction)
        g = dictionary.evaluate(direction)[selection]
        values[k] = abs(np.vdot(g * a, weights)) ** 2
    return BeampatternSamples(directions=tuple(grid), values=values)


def receive_signal(
    h: np.ndarray,
    f: np.ndarray,
    w: np.ndarray,
    symbol: complex,
    noise: np.ndarray,
) -> complex:
    """Baseband receive scalar: w^H H f s + w^H n."""
    h = np.asarray(h)
    if h.shape != (len(w), len(f)):
        raise ValueError("channel shape must be (len(w), len(f))")
    if len(noise) != len(w):
        raise ValueError("noise length must match the combiner length")
    return complex(np.vdot(w, h @ f) * symbol + np.vdot(w, noise))


def snr_and_rate(
    h: np.ndarray, f: np.ndarray, w: np.ndarray, budget: LinkBudget
) -> tuple[float, float]:
    """Post-combining SNR (linear) and spectral efficiency log2(1 + snr)."""
    gain = abs(np.vdot(w, np.asarray(h) @ f)) ** 2
    snr = budget.transmit_power * gain / budget.noise_variance
    return snr, math.log2(1.0 + snr)


def select_patterns_greedy(
    geom: ArrayGeometry,
    dictionary: PatternDictionary,
    weights: np.ndarray,
    target: DirectionAngle,
) -> np.ndarray:
    """Per-element pattern choice maximizing each element's contribution magnitude.

    Element i contributes g conj(a_i) f_i to the beampattern amplitude at the
    target; its magnitude is maximized independently per element.  Ties break
    to the lowest dictionary index.
    """
    a = steering_vector(geom, target)
    gbar = dictionary.evaluate(target)
    mags = np.abs(np.conj(a) * weights)[:, None] * gbar[None, :]
    return np.argmax(mags, axis=1)


def select_patterns_exhaustive(
    geom: ArrayGeometry,
    dictionary: PatternDictionary,
    weights: np.ndarray,
    target: DirectionAngle,
    cap: int = 1_000_000,
) -> np.ndarray:
    """Globally optimal pattern selection at the target by brute force.

    Enumerates all dictionary-size**elements selections; ties break to the
    lexicographically smallest selection.  Refuses search spaces larger than
    ``cap``.
    """
    n_pat = len(dictionary)
    n_elem = geom.num_elements
    total = n_pat**n_elem
    if total > cap:
        raise SearchSpaceError(
            f"exhaustive search over {n_pat}^{n_elem} = {total} selections "
            f"exceeds the guard of {cap}"
        )
    a = steering_vector(geom, target)
    gbar = dictionary.evaluate(target)
    contrib = (np.conj(a) * weights)[:, None] * gbar[None, :]
    # accumulate amplitude over elements; axis k enumerates element k's choice,
    # so the C-order argmax is the lexicographically smallest maximizer
    acc = contrib[0]
    for i in range(1, n_elem):
        acc = acc[..., None] + contrib[i]
    flat = int(np.argmax(np.abs(acc) ** 2))
    return np.array(np.unravel_index(flat, (n_pat,) * n_elem), dtype=int)


class SidelobeMetrics(NamedTuple):
    peak_db: float
    main_db: float
    peak_sidelobe_db: float


def sidelobe_metrics(samples: BeampatternSamples, main_dir: DirectionAngle) -> SidelobeMetrics:
    """Main-beam and strongest-sidelobe levels of a sampled pattern.

    The main lobe is the contiguous region around the peak nearest ``main_dir``,
    delimited by the first local minima on each side; the peak sidelobe is the
    strongest sample outside it (-inf when the main lobe spans the whole grid).
    ``main_db`` is read at the grid point nearest ``main_dir``.
    """
    values = samples.values
    if values.size == 0:
        raise ValueError("samples must be nonempty")
    target = main_dir.unit_vector()
    main_idx = int(
        np.argmax([float(np.dot(target, d.unit_vector())) for d in samples.directions])
    )

    # hill-climb to the local peak of the lobe containing the main direction
    p = main_idx
    while True:
        left = values[p - 1] if p > 0 else -np.inf
        right = values[p + 1] if p + 1 < values.size else -np.inf
        if left <= values[p] and right <= values[p]:
            break
        p = p - 1 if left > right else p + 1

    lo = p
    while lo > 0 and values[lo - 1] <= values[lo]:
        lo -= 1
    hi = p
    while hi + 1 < values.size and values[hi + 1] <= values[hi]:
        hi += 1

    outside = np.concatenate([values[:lo], values[hi + 1 :]])
    peak_sidelobe = float(outside.max()) if outside.size else 0.0
    return SidelobeMetrics(
        peak_db=power_db(float(values.max())),
        main_db=power_db(float(values[main_idx])),
        peak_sidelobe_db=power_db(peak_sidelobe),
    )


def peak_in_window(
    samples: BeampatternSamples, center_az_deg: float, halfwidth_deg: float
) -> float:
    """Strongest sample, in dB, within an azimuth window of the cut."""
    az = samples.azimuths_deg()
    mask = np.abs(az - center_az_deg) <= halfwidth_deg
    if not mask.any():
        raise ValueError("window contains no grid points")
    return power_db(float(samples.values[mask].max()))
