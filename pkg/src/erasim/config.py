"""Run configuration: strict JSON schema, defaults, and builders.

Config files carry angles in degrees and spacings as a fraction of the
wavelength.  Parsed configs keep those file units so that emitting and
re-parsing a config reproduces it exactly; the ``build_*`` helpers convert
into the library's radian-based objects on demand.

Unknown keys are rejected, and every semantic error names the offending field.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, replace

from .channel import ScenarioParams
from .geometry import ArrayGeometry, DirectionAngle
from .beamforming import LinkBudget, azimuth_cut
from .patterns import (
    IsotropicPattern,
    PatternDictionary,
    default_dictionary,
    load_tabulated_pattern,
)

__all__ = [
    "ConfigError",
    "AngleSpec",
    "DictionarySpec",
    "ScenarioSpec",
    "FeedSpec",
    "GridSpec",
    "FocusSpec",
    "SweepSpec",
    "RunConfig",
    "parse_config",
    "default_config",
    "build_dictionary",
    "build_scenario",
    "target_direction",
    "with_target",
]

SWEEP_AXES = ("target_az_deg", "seed", "transmit_power")


class ConfigError(ValueError):
    """Invalid configuration: syntax, unknown key, or bad field value."""


@dataclass(frozen=True)
class AngleSpec:
    az_deg: float
    el_deg: float

    def direction(self) -> DirectionAngle:
        return DirectionAngle.from_degrees(self.az_deg, self.el_deg)


@dataclass(frozen=True)
class DictionarySpec:
    """Pattern dictionary description in file units.

    kind "synthetic" uses the steered-lobe fields, "isotropic" uses size and
    amplitude, "tabulated" uses files (absolute paths after parsing).
    """

    kind: str
    boresights_az_deg: tuple[float, ...] = (45.0, 90.0, 135.0)
    boresight_el_deg: float = 90.0
    exponent: float = 2.0
    peak_dbi: float = 8.0
    size: int = 1
    amplitude: float = 1.0
    files: tuple[str, ...] = ()

    @property
    def num_patterns(self) -> int:
        if self.kind == "synthetic":
            return len(self.boresights_az_deg)
        if self.kind == "isotropic":
            return self.size
        return len(self.files)


@dataclass(frozen=True)
class ScenarioSpec:
    """Propagation scenario in file units; None directions default to the target."""

    num_clusters: int = 0
    paths_per_cluster: tuple[int, ...] = ()
    include_los: bool = True
    los_gain: complex | None = 1.0 + 0.0j
    los_aod: AngleSpec | None = None
    los_aoa: AngleSpec | None = None
    nlos_variance: tuple[float, ...] | float = 1.0
    az_range_deg: tuple[float, float] = (0.0, 360.0)
    el_range_deg: tuple[float, float] = (0.0, 180.0)


@dataclass(frozen=True)
class FeedSpec:
    kind: str = "matched"
    step_deg: float | None = None


@dataclass(frozen=True)
class GridSpec:
    az_start_deg: float = 0.0
    az_stop_deg: float = 180.0
    step_deg: float = 0.25
    el_deg: float = 90.0

    def directions(self) -> tuple[DirectionAngle, ...]:
        return azimuth_cut(self.az_start_deg, self.az_stop_deg, self.step_deg, self.el_deg)


@dataclass(frozen=True)
class FocusSpec:
    """Azimuth window for reporting a sidelobe level at a direction of interest."""

    az_deg: float
    halfwidth_deg: float = 10.0


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class RunConfig:
    seed: int
    output_dir: str
    tx_array: ArrayGeometry
    rx_array: ArrayGeometry
    dictionary: DictionarySpec
    scenario: ScenarioSpec
    feed: FeedSpec
    target: AngleSpec
    grid: GridSpec
    link: LinkBudget
    solver: str
    baseline_state: int | None
    sidelobe_focus: FocusSpec | None
    sweep: SweepSpec | None

    def to_dict(self) -> dict:
        """JSON-shaped echo of the effective configuration."""
        d = self.dictionary
        if d.kind == "synthetic":
            dict_obj = {
                "kind": d.kind,
                "boresights_az_deg": list(d.boresights_az_deg),
                "boresight_el_deg": d.boresight_el_deg,
                "exponent": d.exponent,
                "peak_dbi": d.peak_dbi,
            }
        elif d.kind == "isotropic":
            dict_obj = {"kind": d.kind, "size": d.size, "amplitude": d.amplitude}
        else:
            dict_obj = {"kind": d.kind, "files": list(d.files)}
        s = self.scenario
        variance = (
            list(s.nlos_variance) if isinstance(s.nlos_variance, tuple) else s.nlos_variance
        )
        scenario_obj = {
            "num_clusters": s.num_clusters,
            "paths_per_cluster": list(s.paths_per_cluster),
            "include_los": s.include_los,
            "los_gain": "random-phase"
            if s.los_gain is None
            else {"re": s.los_gain.real, "im": s.los_gain.imag},
            "los_aod_deg": _angle_obj(s.los_aod),
            "los_aoa_deg": _angle_obj(s.los_aoa),
            "nlos_variance": variance,
            "az_range_deg": list(s.az_range_deg),
            "el_range_deg": list(s.el_range_deg),
        }
        feed_obj = {"kind": self.feed.kind}
        if self.feed.step_deg is not None:
            feed_obj["step_deg"] = self.feed.step_deg
        return {
            "seed": self.seed,
            "output_dir": self.output_dir,
            "tx_array": _array_obj(self.tx_array),
            "rx_array": _array_obj(self.rx_array),
            "dictionary": dict_obj,
            "scenario": scenario_obj,
            "feed": feed_obj,
            "target": {"az_deg": self.target.az_deg, "el_deg": self.target.el_deg},
            "grid": {
                "az_start_deg": self.grid.az_start_deg,
                "az_stop_deg": self.grid.az_stop_deg,
                "step_deg": self.grid.step_deg,
                "el_deg": self.grid.el_deg,
            },
            "link": {
                "transmit_power": self.link.transmit_power,
                "noise_variance": self.link.noise_variance,
            },
            "solver": self.solver,
            "baseline_state": self.baseline_state,
            "sidelobe_focus": None
            if self.sidelobe_focus is None
            else {
                "az_deg": self.sidelobe_focus.az_deg,
                "halfwidth_deg": self.sidelobe_focus.halfwidth_deg,
            },
            "sweep": None
            if self.sweep is None
            else {"axis": self.sweep.axis, "values": list(self.sweep.values)},
        }


def _array_obj(geom: ArrayGeometry) -> dict:
    return {
        "n_horizontal": geom.n_horizontal,
        "n_vertical": geom.n_vertical,
        "spacing_wavelengths": geom.spacing_wavelengths,
    }


def _angle_obj(spec: AngleSpec | None):
    return None if spec is None else {"az_deg": spec.az_deg, "el_deg": spec.el_deg}


def default_config() -> RunConfig:
    """Defaults mirroring the reference setup: 12-element transmit row, single
    receive element, line-of-sight toward azimuth 135 degrees."""
    return RunConfig(
        seed=0,
        output_dir="out",
        tx_array=ArrayGeometry(n_horizontal=12, n_vertical=1),
        rx_array=ArrayGeometry(n_horizontal=1, n_vertical=1),
        dictionary=DictionarySpec(kind="synthetic"),
        scenario=ScenarioSpec(),
        feed=FeedSpec(kind="matched"),
        target=AngleSpec(az_deg=135.0, el_deg=90.0),
        grid=GridSpec(),
        link=LinkBudget(transmit_power=1.0, noise_variance=1.0),
        solver="greedy",
        baseline_state=None,
        sidelobe_focus=None,
        sweep=None,
    )


# ---------------------------------------------------------------------------
# strict extraction helpers: every error names the field path


def _check_keys(obj: dict, path: str, allowed: tuple[str, ...]):
    for key in obj:
        if key not in allowed:
            where = f"{path}.{key}" if path else key
            raise ConfigError(f"{where}: unknown key")


def _get_obj(obj: dict, path: str, key: str, default: dict | None = None) -> dict | None:
    value = obj.get(key, default)
    if value is default:
        return default
    if not isinstance(value, dict):
        raise ConfigError(f"{_join(path, key)}: expected an object")
    return value


def _get_number(obj: dict, path: str, key: str, default=None) -> float:
    value = obj.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{_join(path, key)}: expected a number")
    return float(value)


def _get_int(obj: dict, path: str, key: str, default=None) -> int:
    value = obj.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{_join(path, key)}: expected an integer")
    return value


def _get_bool(obj: dict, path: str, key: str, default=None) -> bool:
    value = obj.get(key, default)
    if not isinstance(value, bool):
        raise ConfigError(f"{_join(path, key)}: expected true or false")
    return value


def _get_str(obj: dict, path: str, key: str, default=None) -> str:
    value = obj.get(key, default)
    if not isinstance(value, str):
        raise ConfigError(f"{_join(path, key)}: expected a string")
    return value


def _get_list(obj: dict, path: str, key: str, default=None) -> list:
    value = obj.get(key, default)
    if not isinstance(value, list):
        raise ConfigError(f"{_join(path, key)}: expected a list")
    return value


def _number_list(values: list, path: str) -> tuple[float, ...]:
    out = []
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{path}[{i}]: expected a number")
        out.append(float(v))
    return tuple(out)


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _parse_angle(obj: dict, path: str, default_az: float, default_el: float) -> AngleSpec:
    _check_keys(obj, path, ("az_deg", "el_deg"))
    az = _get_number(obj, path, "az_deg", default_az)
    el = _get_number(obj, path, "el_deg", default_el)
    if not 0.0 <= el <= 180.0:
        raise ConfigError(f"{_join(path, 'el_deg')}: must lie in [0, 180]")
    return AngleSpec(az_deg=az, el_deg=el)


def _parse_array(obj: dict, path: str, base: ArrayGeometry) -> ArrayGeometry:
    _check_keys(obj, path, ("n_horizontal", "n_vertical", "spacing_wavelengths"))
    n_h = _get_int(obj, path, "n_horizontal", base.n_horizontal)
    n_v = _get_int(obj, path, "n_vertical", base.n_vertical)
    spacing = _get_number(obj, path, "spacing_wavelengths", base.spacing_wavelengths)
    if n_h < 1:
        raise ConfigError(f"{_join(path, 'n_horizontal')}: must be at least 1")
    if n_v < 1:
        raise ConfigError(f"{_join(path, 'n_vertical')}: must be at least 1")
    if not spacing > 0:
        raise ConfigError(f"{_join(path, 'spacing_wavelengths')}: must be positive")
    return ArrayGeometry(n_horizontal=n_h, n_vertical=n_v, spacing_wavelengths=spacing)


def _parse_dictionary(obj: dict, path: str, base_dir: str) -> DictionarySpec:
    kind = _get_str(obj, path, "kind", "synthetic")
    if kind == "synthetic":
        _check_keys(
            obj,
            path,
            ("kind", "boresights_az_deg", "boresight_el_deg", "exponent", "peak_dbi"),
        )
        boresights = _number_list(
            _get_list(obj, path, "boresights_az_deg", [45.0, 90.0, 135.0]),
            _join(path, "boresights_az_deg"),
        )
        if not boresights:
            raise ConfigError(f"{_join(path, 'boresights_az_deg')}: must be nonempty")
        el = _get_number(obj, path, "boresight_el_deg", 90.0)
        exponent = _get_number(obj, path, "exponent", 2.0)
        peak_dbi = _get_number(obj, path, "peak_dbi", 8.0)
        if exponent < 0:
            raise ConfigError(f"{_join(path, 'exponent')}: must be nonnegative")
        return DictionarySpec(
            kind=kind,
            boresights_az_deg=boresights,
            boresight_el_deg=el,
            exponent=exponent,
            peak_dbi=peak_dbi,
        )
    if kind == "isotropic":
        _check_keys(obj, path, ("kind", "size", "amplitude"))
        size = _get_int(obj, path, "size", 1)
        amplitude = _get_number(obj, path, "amplitude", 1.0)
        if size < 1:
            raise ConfigError(f"{_join(path, 'size')}: must be at least 1")
        if not amplitude > 0:
            raise ConfigError(f"{_join(path, 'amplitude')}: must be positive")
        return DictionarySpec(kind=kind, size=size, amplitude=amplitude)
    if kind == "tabulated":
        _check_keys(obj, path, ("kind", "files"))
        raw = _get_list(obj, path, "files", None)
        files = []
        for i, name in enumerate(raw):
            if not isinstance(name, str):
                raise ConfigError(f"{_join(path, 'files')}[{i}]: expected a path string")
            full = name if os.path.isabs(name) else os.path.join(base_dir, name)
            if not os.path.isfile(full):
                raise ConfigError(f"{_join(path, 'files')}[{i}]: no such file: {full}")
            files.append(os.path.abspath(full))
        if not files:
            raise ConfigError(f"{_join(path, 'files')}: must be nonempty")
        return DictionarySpec(kind=kind, files=tuple(files))
    raise ConfigError(
        f"{_join(path, 'kind')}: must be one of synthetic, isotropic, tabulated"
    )


def _parse_scenario(obj: dict, path: str) -> ScenarioSpec:
    _check_keys(
        obj,
        path,
        (
            "num_clusters",
            "paths_per_cluster",
            "include_los",
            "los_gain",
            "los_aod_deg",
            "los_aoa_deg",
            "nlos_variance",
            "az_range_deg",
            "el_range_deg",
        ),
    )
    num_clusters = _get_int(obj, path, "num_clusters", 0)
    if num_clusters < 0:
        raise ConfigError(f"{_join(path, 'num_clusters')}: must be nonnegative")
    per_cluster_raw = _get_list(obj, path, "paths_per_cluster", [])
    per_cluster = []
    for i, v in enumerate(per_cluster_raw):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise ConfigError(
                f"{_join(path, 'paths_per_cluster')}[{i}]: expected a positive integer"
            )
        per_cluster.append(v)
    if len(per_cluster) != num_clusters:
        raise ConfigError(
            f"{_join(path, 'paths_per_cluster')}: length must equal num_clusters"
        )
    include_los = _get_bool(obj, path, "include_los", True)
    if not include_los and num_clusters == 0:
        raise ConfigError(f"{path}: needs a line-of-sight path or at least one cluster")

    gain_raw = obj.get("los_gain", {"re": 1.0, "im": 0.0})
    if gain_raw == "random-phase":
        los_gain = None
    elif isinstance(gain_raw, dict):
        gpath = _join(path, "los_gain")
        _check_keys(gain_raw, gpath, ("re", "im"))
        los_gain = complex(
            _get_number(gain_raw, gpath, "re", 0.0), _get_number(gain_raw, gpath, "im", 0.0)
        )
    else:
        raise ConfigError(
            f"{_join(path, 'los_gain')}: expected {{re, im}} or \"random-phase\""
        )

    los_aod = los_aoa = None
    if obj.get("los_aod_deg") is not None:
        los_aod = _parse_angle(
            _get_obj(obj, path, "los_aod_deg"), _join(path, "los_aod_deg"), 90.0, 90.0
        )
    if obj.get("los_aoa_deg") is not None:
        los_aoa = _parse_angle(
            _get_obj(obj, path, "los_aoa_deg"), _join(path, "los_aoa_deg"), 90.0, 90.0
        )

    var_raw = obj.get("nlos_variance", 1.0)
    if isinstance(var_raw, list):
        variance = _number_list(var_raw, _join(path, "nlos_variance"))
        if len(variance) != num_clusters:
            raise ConfigError(
                f"{_join(path, 'nlos_variance')}: length must equal num_clusters"
            )
        bad = any(not v > 0 for v in variance)
    elif isinstance(var_raw, bool) or not isinstance(var_raw, (int, float)):
        raise ConfigError(f"{_join(path, 'nlos_variance')}: expected a number or list")
    else:
        variance = float(var_raw)
        bad = not variance > 0
    if bad:
        raise ConfigError(f"{_join(path, 'nlos_variance')}: must be positive")

    az_range = _number_list(
        _get_list(obj, path, "az_range_deg", [0.0, 360.0]), _join(path, "az_range_deg")
    )
    el_range = _number_list(
        _get_list(obj, path, "el_range_deg", [0.0, 180.0]), _join(path, "el_range_deg")
    )
    if len(az_range) != 2 or not az_range[0] <= az_range[1]:
        raise ConfigError(f"{_join(path, 'az_range_deg')}: expected [low, high]")
    if len(el_range) != 2 or not 0.0 <= el_range[0] <= el_range[1] <= 180.0:
        raise ConfigError(
            f"{_join(path, 'el_range_deg')}: expected [low, high] within [0, 180]"
        )
    return ScenarioSpec(
        num_clusters=num_clusters,
        paths_per_cluster=tuple(per_cluster),
        include_los=include_los,
        los_gain=los_gain,
        los_aod=los_aod,
        los_aoa=los_aoa,
        nlos_variance=variance,
        az_range_deg=(az_range[0], az_range[1]),
        el_range_deg=(el_range[0], el_range[1]),
    )


def _parse_feed(obj: dict, path: str) -> FeedSpec:
    _check_keys(obj, path, ("kind", "step_deg"))
    kind = _get_str(obj, path, "kind", "matched")
    if kind not in ("matched", "phase-gradient"):
        raise ConfigError(f"{_join(path, 'kind')}: must be matched or phase-gradient")
    step = None
    if obj.get("step_deg") is not None:
        step = _get_number(obj, path, "step_deg")
    if kind == "phase-gradient" and step is None:
        raise ConfigError(f"{_join(path, 'step_deg')}: required when kind is phase-gradient")
    return FeedSpec(kind=kind, step_deg=step)


def _parse_grid(obj: dict, path: str) -> GridSpec:
    _check_keys(obj, path, ("az_start_deg", "az_stop_deg", "step_deg", "el_deg"))
    start = _get_number(obj, path, "az_start_deg", 0.0)
    stop = _get_number(obj, path, "az_stop_deg", 180.0)
    step = _get_number(obj, path, "step_deg", 0.25)
    el = _get_number(obj, path, "el_deg", 90.0)
    if not step > 0:
        raise ConfigError(f"{_join(path, 'step_deg')}: must be positive")
    if stop < start:
        raise ConfigError(f"{_join(path, 'az_stop_deg')}: must not precede az_start_deg")
    if not 0.0 <= el <= 180.0:
        raise ConfigError(f"{_join(path, 'el_deg')}: must lie in [0, 180]")
    return GridSpec(az_start_deg=start, az_stop_deg=stop, step_deg=step, el_deg=el)


def _parse_sweep(obj: dict, path: str) -> SweepSpec:
    _check_keys(obj, path, ("axis", "values", "start", "stop", "step"))
    axis = _get_str(obj, path, "axis", None)
    if axis not in SWEEP_AXES:
        raise ConfigError(f"{_join(path, 'axis')}: must be one of {', '.join(SWEEP_AXES)}")
    has_values = obj.get("values") is not None
    has_range = any(obj.get(k) is not None for k in ("start", "stop", "step"))
    if has_values and has_range:
        raise ConfigError(f"{path}: give either values or start/stop/step, not both")
    if has_values:
        values = _number_list(_get_list(obj, path, "values"), _join(path, "values"))
        if not values:
            raise ConfigError(f"{_join(path, 'values')}: must be nonempty")
    elif has_range:
        start = _get_number(obj, path, "start")
        stop = _get_number(obj, path, "stop")
        step = _get_number(obj, path, "step")
        if not step > 0:
            raise ConfigError(f"{_join(path, 'step')}: must be positive")
        if stop < start:
            raise ConfigError(f"{_join(path, 'stop')}: must not precede start")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        values = tuple(start + k * step for k in range(count))
    else:
        raise ConfigError(f"{path}: values or start/stop/step required")
    if axis == "seed":
        for i, v in enumerate(values):
            if v != int(v):
                raise ConfigError(f"{_join(path, 'values')}[{i}]: seed values must be integers")
    return SweepSpec(axis=axis, values=values)


TOP_KEYS = (
    "seed",
    "output_dir",
    "tx_array",
    "rx_array",
    "dictionary",
    "scenario",
    "feed",
    "target",
    "grid",
    "link",
    "solver",
    "baseline_state",
    "sidelobe_focus",
    "sweep",
)


def parse_config(text: str, base_dir: str | None = None) -> RunConfig:
    """Parse and validate a JSON config; missing fields fall back to defaults.

    ``base_dir`` anchors relative pattern-file paths (defaults to the working
    directory); referenced files must exist at parse time.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root: expected an object")
    _check_keys(raw, "", TOP_KEYS)
    base_dir = base_dir or os.getcwd()
    base = default_config()

    seed = _get_int(raw, "", "seed", base.seed)
    if seed < 0:
        raise ConfigError("seed: must be nonnegative")
    output_dir = _get_str(raw, "", "output_dir", base.output_dir)
    tx_array = _parse_array(_get_obj(raw, "", "tx_array", {}) or {}, "tx_array", base.tx_array)
    rx_array = _parse_array(_get_obj(raw, "", "rx_array", {}) or {}, "rx_array", base.rx_array)
    dictionary = _parse_dictionary(
        _get_obj(raw, "", "dictionary", {}) or {}, "dictionary", base_dir
    )
    scenario = _parse_scenario(_get_obj(raw, "", "scenario", {}) or {}, "scenario")
    feed = _parse_feed(_get_obj(raw, "", "feed", {}) or {}, "feed")
    target = _parse_angle(
        _get_obj(raw, "", "target", {}) or {}, "target", base.target.az_deg, base.target.el_deg
    )
    grid = _parse_grid(_get_obj(raw, "", "grid", {}) or {}, "grid")

    link_obj = _get_obj(raw, "", "link", {}) or {}
    _check_keys(link_obj, "link", ("transmit_power", "noise_variance"))
    power = _get_number(link_obj, "link", "transmit_power", base.link.transmit_power)
    variance = _get_number(link_obj, "link", "noise_variance", base.link.noise_variance)
    if not power > 0:
        raise ConfigError("link.transmit_power: must be positive")
    if not variance > 0:
        raise ConfigError("link.noise_variance: must be positive")

    solver = _get_str(raw, "", "solver", base.solver)
    if solver not in ("greedy", "exhaustive"):
        raise ConfigError("solver: must be greedy or exhaustive")

    baseline_state = None
    if raw.get("baseline_state") is not None:
        baseline_state = _get_int(raw, "", "baseline_state")
        if not 0 <= baseline_state < dictionary.num_patterns:
            raise ConfigError(
                f"baseline_state: must lie in [0, {dictionary.num_patterns - 1}]"
            )

    sidelobe_focus = None
    if raw.get("sidelobe_focus") is not None:
        focus_obj = _get_obj(raw, "", "sidelobe_focus")
        _check_keys(focus_obj, "sidelobe_focus", ("az_deg", "halfwidth_deg"))
        halfwidth = _get_number(focus_obj, "sidelobe_focus", "halfwidth_deg", 10.0)
        if not halfwidth > 0:
            raise ConfigError("sidelobe_focus.halfwidth_deg: must be positive")
        sidelobe_focus = FocusSpec(
            az_deg=_get_number(focus_obj, "sidelobe_focus", "az_deg"),
            halfwidth_deg=halfwidth,
        )

    sweep = None
    if raw.get("sweep") is not None:
        sweep = _parse_sweep(_get_obj(raw, "", "sweep"), "sweep")

    return RunConfig(
        seed=seed,
        output_dir=output_dir,
        tx_array=tx_array,
        rx_array=rx_array,
        dictionary=dictionary,
        scenario=scenario,
        feed=feed,
        target=target,
        grid=grid,
        link=LinkBudget(transmit_power=power, noise_variance=variance),
        solver=solver,
        baseline_state=baseline_state,
        sidelobe_focus=sidelobe_focus,
        sweep=sweep,
    )


# ---------------------------------------------------------------------------
# builders into library objects


def build_dictionary(spec: DictionarySpec) -> PatternDictionary:
    if spec.kind == "synthetic":
        return default_dictionary(
            boresights_az_deg=spec.boresights_az_deg,
            boresight_el_deg=spec.boresight_el_deg,
            exponent=spec.exponent,
            peak_dbi=spec.peak_dbi,
        )
    if spec.kind == "isotropic":
        return PatternDictionary(
            tuple(IsotropicPattern(amplitude=spec.amplitude) for _ in range(spec.size))
        )
    return PatternDictionary(tuple(load_tabulated_pattern(p) for p in spec.files))


def target_direction(cfg: RunConfig) -> DirectionAngle:
    return cfg.target.direction()


def build_scenario(cfg: RunConfig) -> ScenarioParams:
    """Scenario parameters in radians; unset departure/arrival default to the target."""
    s = cfg.scenario
    aod = (s.los_aod or cfg.target).direction()
    aoa = (s.los_aoa or cfg.target).direction()
    return ScenarioParams(
        num_clusters=s.num_clusters,
        paths_per_cluster=s.paths_per_cluster,
        include_los=s.include_los,
        los_gain=s.los_gain,
        los_aod=aod,
        los_aoa=aoa,
        nlos_variance=s.nlos_variance,
        az_range_rad=(math.radians(s.az_range_deg[0]), math.radians(s.az_range_deg[1])),
        el_range_rad=(math.radians(s.el_range_deg[0]), math.radians(s.el_range_deg[1])),
        seed=cfg.seed,
    )


def with_target(cfg: RunConfig, az_deg: float | None, el_deg: float | None) -> RunConfig:
    """Copy of the config with target angles replaced where given."""
    if az_deg is None and el_deg is None:
        return cfg
    target = AngleSpec(
        az_deg=cfg.target.az_deg if az_deg is None else az_deg,
        el_deg=cfg.target.el_deg if el_deg is None else el_deg,
    )
    if not 0.0 <= target.el_deg <= 180.0:
        raise ConfigError("target.el_deg: must lie in [0, 180]")
    return replace(cfg, target=target)
