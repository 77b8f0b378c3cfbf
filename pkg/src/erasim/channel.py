"""Far-field clustered multipath channels over arrays with selectable patterns.

Builds the conventional channel (one shared element pattern), the pattern-space
lifted channel, and the reconfigurable channel in both its per-element Hadamard
form and its factored form through the selection matrices.  All matrices are
dense; sizes stay small at desk scale.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from .geometry import ArrayGeometry, DirectionAngle, steering_vector
from .patterns import ElementPattern, PatternDictionary, selection_matrix

__all__ = [
    "PropagationPath",
    "PathSet",
    "ScenarioParams",
    "ChannelRealization",
    "normalization_factor",
    "draw_scenario",
    "trial_seed",
    "draw_noise",
    "channel_conventional",
    "em_domain_channel",
    "channel_era_direct",
    "channel_era_factored",
    "realize_channels",
]


@dataclass(frozen=True)
class PropagationPath:
    """One path: complex gain, departure direction, arrival direction."""

    gain: complex
    aod: DirectionAngle
    aoa: DirectionAngle

    def __post_init__(self):
        if not (math.isfinite(self.gain.real) and math.isfinite(self.gain.imag)):
            raise ValueError("path gain must be finite")


@dataclass(frozen=True)
class PathSet:
    """Optional line-of-sight path plus clustered scattered paths."""

    los: PropagationPath | None
    clusters: tuple[tuple[PropagationPath, ...], ...] = ()

    def __post_init__(self):
        clusters = tuple(tuple(c) for c in self.clusters)
        object.__setattr__(self, "clusters", clusters)
        if self.los is None and self.num_nlos == 0:
            raise ValueError("path set must contain at least one path")

    @property
    def num_nlos(self) -> int:
        return sum(len(c) for c in self.clusters)

    def all_paths(self) -> Iterator[PropagationPath]:
        if self.los is not None:
            yield self.los
        for cluster in self.clusters:
            yield from cluster


def normalization_factor(
    n_tx: int, n_rx: int, n_nlos_paths: int, include_los: bool = True
) -> float:
    """Channel normalization sqrt(n_tx * n_rx / total path count).

    The line-of-sight path counts as one; with no line of sight the scattered
    paths alone set the denominator.
    """
    if n_tx < 1 or n_rx < 1:
        raise ValueError("array sizes must be positive")
    total = (1 if include_los else 0) + n_nlos_paths
    if total < 1:
        raise ValueError("cannot normalize a channel with zero paths")
    return math.sqrt(n_tx * n_rx / total)


@dataclass(frozen=True)
class ScenarioParams:
    """Stochastic scenario description for reproducible path-set draws.

    ``los_gain=None`` draws a unit-modulus gain with uniform random phase;
    scattered gains are circular complex Gaussian with the per-cluster variance.
    Angles are drawn uniformly over the configured azimuth/elevation ranges,
    while the line-of-sight directions are fixed.
    """

    num_clusters: int = 0
    paths_per_cluster: tuple[int, ...] = ()
    include_los: bool = True
    los_gain: complex | None = 1.0 + 0.0j
    los_aod: DirectionAngle = DirectionAngle.from_degrees(90.0, 90.0)
    los_aoa: DirectionAngle = DirectionAngle.from_degrees(90.0, 90.0)
    nlos_variance: tuple[float, ...] | float = 1.0
    az_range_rad: tuple[float, float] = (0.0, 2.0 * math.pi)
    el_range_rad: tuple[float, float] = (0.0, math.pi)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "paths_per_cluster", tuple(self.paths_per_cluster))
        if len(self.paths_per_cluster) != self.num_clusters:
            raise ValueError("paths_per_cluster length must equal num_clusters")
        if any(n < 1 for n in self.paths_per_cluster):
            raise ValueError("every cluster must contribute at least one path")
        if not self.include_los and self.num_clusters == 0:
            raise ValueError("scenario has no paths")
        for v in self.cluster_variances():
            if v < 0:
                raise ValueError("nlos_variance must be nonnegative")

    def cluster_variances(self) -> tuple[float, ...]:
        if isinstance(self.nlos_variance, (int, float)):
            return (float(self.nlos_variance),) * self.num_clusters
        if len(self.nlos_variance) != self.num_clusters:
            raise ValueError("nlos_variance length must equal num_clusters")
        return tuple(float(v) for v in self.nlos_variance)


def trial_seed(seed: int, trial_index: int) -> int:
    """Seed for trial ``trial_index`` of a batch; parallel and serial runs agree."""
    return seed + trial_index


def draw_scenario(params: ScenarioParams) -> PathSet:
    """Draw a path set; deterministic for a fixed ``params.seed``.

    Draw order is fixed: line-of-sight phase first (when random), then per
    cluster its gains (real parts, then imaginary), departure azimuths and
    elevations, and arrival azimuths and elevations.
    """
    rng = np.random.default_rng(params.seed)
    az0, az1 = params.az_range_rad
    el0, el1 = params.el_range_rad

    los = None
    if params.include_los:
        gain = params.los_gain
        if gain is None:
            gain = cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        los = PropagationPath(complex(gain), params.los_aod, params.los_aoa)

    clusters = []
    for count, variance in zip(params.paths_per_cluster, params.cluster_variances()):
        re = rng.standard_normal(count)
        im = rng.standard_normal(count)
        gains = math.sqrt(variance / 2.0) * (re + 1j * im)
        aod_az = rng.uniform(az0, az1, count)
        aod_el = rng.uniform(el0, el1, count)
        aoa_az = rng.uniform(az0, az1, count)
        aoa_el = rng.uniform(el0, el1, count)
        clusters.append(
            tuple(
                PropagationPath(
                    complex(gains[k]),
                    DirectionAngle(aod_az[k], aod_el[k]),
                    DirectionAngle(aoa_az[k], aoa_el[k]),
                )
                for k in range(count)
            )
        )
    return PathSet(los=los, clusters=tuple(clusters))


def draw_noise(rng: np.random.Generator, n: int, variance: float, count: int | None = None):
    """Circular complex Gaussian noise with total per-entry variance ``variance``.

    Returns shape (n,) or (count, n).  Real parts are drawn before imaginary
    parts so the stream position is well defined.
    """
    shape = (n,) if count is None else (count, n)
    re = rng.standard_normal(shape)
    im = rng.standard_normal(shape)
    return math.sqrt(variance / 2.0) * (re + 1j * im)


def _pattern_weighted_sum(
    path_set: PathSet,
    geom_tx: ArrayGeometry,
    geom_rx: ArrayGeometry,
    tx_gains: Callable[[DirectionAngle], np.ndarray],
    rx_gains: Callable[[DirectionAngle], np.ndarray],
) -> np.ndarray:
    # Shared kernel for the Hadamard form: sum of alpha (g_r o a_r)(g_t o a_t)^H.
    h = np.zeros((geom_rx.num_elements, geom_tx.num_elements), dtype=complex)
    for path in path_set.all_paths():
        a_t = steering_vector(geom_tx, path.aod)
        a_r = steering_vector(geom_rx, path.aoa)
        h += path.gain * np.outer(rx_gains(path.aoa) * a_r, np.conj(tx_gains(path.aod) * a_t))
    return h


def channel_conventional(
    path_set: PathSet,
    geom_tx: ArrayGeometry,
    geom_rx: ArrayGeometry,
    pattern_tx: ElementPattern,
    pattern_rx: ElementPattern,
) -> np.ndarray:
    """Channel of a conventional array: every element shares one pattern.

    This is the degenerate case of the reconfigurable channel with a constant
    per-element gain, computed through the same kernel so the two agree bit for
    bit when the reconfigurable array selects a single pattern everywhere.
    """
    n_t, n_r = geom_tx.num_elements, geom_rx.num_elements
    gamma = normalization_factor(n_t, n_r, path_set.num_nlos, path_set.los is not None)
    h = _pattern_weighted_sum(
        path_set,
        geom_tx,
        geom_rx,
        lambda d: np.full(n_t, pattern_tx.evaluate(d)),
        lambda d: np.full(n_r, pattern_rx.evaluate(d)),
    )
    return gamma * h


def em_domain_channel(
    path_set: PathSet,
    geom_tx: ArrayGeometry,
    geom_rx: ArrayGeometry,
    dictionary: PatternDictionary,
) -> np.ndarray:
    """Pattern-space lifted channel of shape (N n_rx, N n_tx), N = dictionary size.

    Rows and columns enumerate (element, pattern) pairs; the normalization
    factor is applied later, when a selection collapses this to element space.
    """
    n = len(dictionary)
    h = np.zeros((n * geom_rx.num_elements, n * geom_tx.num_elements), dtype=complex)
    for path in path_set.all_paths():
        lifted_t = np.kron(steering_vector(geom_tx, path.aod), dictionary.evaluate(path.aod))
        lifted_r = np.kron(steering_vector(geom_rx, path.aoa), dictionary.evaluate(path.aoa))
        h += path.gain * np.outer(lifted_r, np.conj(lifted_t))
    return h


def channel_era_direct(
    path_set: PathSet,
    geom_tx: ArrayGeometry,
    geom_rx: ArrayGeometry,
    dictionary: PatternDictionary,
    tx_selection: Sequence[int],
    rx_selection: Sequence[int],
) -> np.ndarray:
    """Reconfigurable-array channel in per-element (Hadamard) form, with normalization."""
    tx_selection = np.asarray(tx_selection, dtype=int)
    rx_selection = np.asarray(rx_selection, dtype=int)
    if tx_selection.shape != (geom_tx.num_elements,):
        raise ValueError("tx_selection length must match the transmit element count")
    if rx_selection.shape != (geom_rx.num_elements,):
        raise ValueError("rx_selection length must match the receive element count")
    gamma = normalization_factor(
        geom_tx.num_elements, geom_rx.num_elements, path_set.num_nlos, path_set.los is not None
    )
    h = _pattern_weighted_sum(
        path_set,
        geom_tx,
        geom_rx,
        lambda d: dictionary.evaluate(d)[tx_selection],
        lambda d: dictionary.evaluate(d)[rx_selection],
    )
    return gamma * h


def channel_era_factored(
    h_em: np.ndarray,
    tx_selection: Sequence[int],
    rx_selection: Sequence[int],
    gamma: float,
) -> np.ndarray:
    """Collapse the lifted channel through the selection matrices: gamma D H B^T.

    The dictionary size is inferred from the lifted shape; a shape that is not
    a multiple of the selection lengths, or mismatched transmit/receive
    dictionary sizes, is a dimension error.
    """
    tx_selection = list(tx_selection)
    rx_selection = list(rx_selection)
    n_rows, n_cols = h_em.shape
    if n_rows % len(rx_selection) or n_cols % len(tx_selection):
        raise ValueError("lifted channel shape is not a multiple of the selection lengths")
    n_pat_rx = n_rows // len(rx_selection)
    n_pat_tx = n_cols // len(tx_selection)
    if n_pat_rx != n_pat_tx:
        raise ValueError("transmit and receive sides imply different dictionary sizes")
    b = selection_matrix(tx_selection, n_pat_tx)
    d = selection_matrix(rx_selection, n_pat_rx)
    return gamma * (d @ h_em @ b.T)


@dataclass(frozen=True)
class ChannelRealization:
    """One drawn channel: the matrices that were requested plus the shared gamma."""

    gamma: float
    h_cv: np.ndarray | None = None
    h_er: np.ndarray | None = None
    h_em: np.ndarray | None = None


def realize_channels(
    path_set: PathSet,
    geom_tx: ArrayGeometry,
    geom_rx: ArrayGeometry,
    dictionary: PatternDictionary,
    tx_selection: Sequence[int],
    rx_selection: Sequence[int],
    baseline_pattern: ElementPattern,
) -> ChannelRealization:
    """All three channel matrices for one path set, sharing one gamma.

    The reconfigurable matrix comes from the per-element form; the factored
    form is its independent cross-check and is exercised by the tests.
    """
    gamma = normalization_factor(
        geom_tx.num_elements, geom_rx.num_elements, path_set.num_nlos, path_set.los is not None
    )
    return ChannelRealization(
        gamma=gamma,
        h_cv=channel_conventional(path_set, geom_tx, geom_rx, baseline_pattern, baseline_pattern),
        h_er=channel_era_direct(
            path_set, geom_tx, geom_rx, dictionary, tx_selection, rx_selection
        ),
        h_em=em_domain_channel(path_set, geom_tx, geom_rx, dictionary),
    )
