"""Command-line front end.

Subcommands: beampattern, channel, optimize, compare, sweep.  Every run is a
pure function of (config, seed): data files and figures land in the output
directory byte-identically across repeat runs.  Flag overrides win over the
config file and the effective config is echoed into the summary JSON.

Exit codes: 0 success, 1 runtime error, 2 configuration error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from dataclasses import dataclass, replace

import numpy as np

from .beamforming import (
    BeampatternSamples,
    SearchSpaceError,
    SidelobeMetrics,
    beampattern,
    matched_precoder,
    peak_in_window,
    phase_gradient_precoder,
    power_db,
    select_patterns_exhaustive,
    select_patterns_greedy,
    sidelobe_metrics,
    snr_and_rate,
)
from .channel import ChannelRealization, PathSet, draw_scenario, realize_channels
from .config import (
    ConfigError,
    FeedSpec,
    LinkBudget,
    RunConfig,
    build_dictionary,
    build_scenario,
    default_config,
    parse_config,
    target_direction,
    with_target,
)
from .geometry import DirectionAngle
from .patterns import PatternDictionary
from .reports import (
    RunSummary,
    figure_beampattern,
    figure_channel_heatmap,
    figure_sweep,
    write_beampattern_csv,
    write_channel_csv,
    write_summary,
    write_table_csv,
)

__all__ = ["main"]


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="path to a JSON config file")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--out", help="override the output directory")
    p.add_argument("--solver", choices=("greedy", "exhaustive"))
    p.add_argument("--feed", choices=("matched", "phase-gradient"))
    p.add_argument("--step-deg", type=float, dest="step_deg", help="phase-gradient step")
    p.add_argument("--target-az-deg", type=float, dest="target_az_deg")
    p.add_argument("--target-el-deg", type=float, dest="target_el_deg")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="erasim",
        description="Channel and beampattern simulator for arrays with selectable "
        "per-element radiation patterns",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("beampattern", "evaluate the array beampattern over a grid"),
        ("channel", "draw a multipath scenario and dump the channel matrices"),
        ("optimize", "choose per-element patterns for a target direction"),
        ("compare", "reconfigurable selection versus a fixed baseline state"),
        ("sweep", "repeat a run over a parameter axis"),
    ):
        _add_common(sub.add_parser(name, help=doc))
    return parser


def _effective_config(args: argparse.Namespace) -> RunConfig:
    if args.config:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        cfg = parse_config(text, base_dir=os.path.dirname(os.path.abspath(args.config)))
    else:
        cfg = default_config()
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError("seed: must be nonnegative")
        cfg = replace(cfg, seed=args.seed)
    if args.out is not None:
        cfg = replace(cfg, output_dir=args.out)
    if args.solver is not None:
        cfg = replace(cfg, solver=args.solver)
    if args.feed is not None or args.step_deg is not None:
        kind = args.feed if args.feed is not None else cfg.feed.kind
        step = args.step_deg if args.step_deg is not None else cfg.feed.step_deg
        if kind == "phase-gradient" and step is None:
            raise ConfigError("feed.step_deg: required when kind is phase-gradient")
        cfg = replace(cfg, feed=FeedSpec(kind=kind, step_deg=step))
    return with_target(cfg, args.target_az_deg, args.target_el_deg)


def _tx_weights(cfg: RunConfig, target: DirectionAngle) -> np.ndarray:
    if cfg.feed.kind == "phase-gradient":
        return phase_gradient_precoder(
            cfg.tx_array.num_elements, math.radians(cfg.feed.step_deg)
        )
    return matched_precoder(cfg.tx_array, target)


def _select(cfg, geom, dictionary, weights, direction) -> np.ndarray:
    if cfg.solver == "exhaustive":
        return select_patterns_exhaustive(geom, dictionary, weights, direction)
    return select_patterns_greedy(geom, dictionary, weights, direction)


@dataclass
class _BeamPart:
    dictionary: PatternDictionary
    target: DirectionAngle
    weights: np.ndarray
    tx_selection: np.ndarray
    samples: BeampatternSamples
    metrics: SidelobeMetrics
    focus_db: float | None


def _beam_part(cfg: RunConfig) -> _BeamPart:
    dictionary = build_dictionary(cfg.dictionary)
    target = target_direction(cfg)
    weights = _tx_weights(cfg, target)
    tx_selection = _select(cfg, cfg.tx_array, dictionary, weights, target)
    samples = beampattern(cfg.tx_array, dictionary, tx_selection, weights, cfg.grid.directions())
    metrics = sidelobe_metrics(samples, target)
    focus_db = None
    if cfg.sidelobe_focus is not None:
        focus_db = peak_in_window(
            samples, cfg.sidelobe_focus.az_deg, cfg.sidelobe_focus.halfwidth_deg
        )
    return _BeamPart(dictionary, target, weights, tx_selection, samples, metrics, focus_db)


@dataclass
class _LinkPart:
    path_set: PathSet
    combiner: np.ndarray
    rx_selection: np.ndarray
    realization: ChannelRealization
    snr: float
    rate: float


def _link_part(cfg: RunConfig, beam: _BeamPart) -> _LinkPart:
    """Scenario draw, mirrored receive-side selection, channel matrices, link metrics."""
    params = build_scenario(cfg)
    path_set = draw_scenario(params)
    arrival = (cfg.scenario.los_aoa or cfg.target).direction()
    combiner = matched_precoder(cfg.rx_array, arrival)
    rx_selection = _select(cfg, cfg.rx_array, beam.dictionary, combiner, arrival)
    baseline = 0 if cfg.baseline_state is None else cfg.baseline_state
    realization = realize_channels(
        path_set,
        cfg.tx_array,
        cfg.rx_array,
        beam.dictionary,
        beam.tx_selection,
        rx_selection,
        beam.dictionary[baseline],
    )
    snr, rate = snr_and_rate(realization.h_er, beam.weights, combiner, cfg.link)
    return _LinkPart(path_set, combiner, rx_selection, realization, snr, rate)


def _out_path(cfg: RunConfig, name: str) -> str:
    os.makedirs(cfg.output_dir, exist_ok=True)
    return os.path.join(cfg.output_dir, name)


def cmd_beampattern(cfg: RunConfig):
    beam = _beam_part(cfg)
    write_beampattern_csv(beam.samples, _out_path(cfg, "beampattern.csv"))
    figure_beampattern(
        [("selected", beam.samples)],
        _out_path(cfg, "beampattern.png"),
        target_az_deg=cfg.target.az_deg,
    )
    metrics = {"peak_db": beam.metrics.peak_db, "grid_points": len(beam.samples.directions)}
    if beam.focus_db is not None:
        metrics["focus_sidelobe_db"] = beam.focus_db
    write_summary(
        RunSummary(
            command="beampattern",
            config=cfg.to_dict(),
            main_beam_db=beam.metrics.main_db,
            peak_sidelobe_db=beam.metrics.peak_sidelobe_db,
            tx_selection=tuple(int(i) for i in beam.tx_selection),
            metrics=metrics,
        ),
        _out_path(cfg, "summary.json"),
    )


def cmd_channel(cfg: RunConfig):
    beam = _beam_part(cfg)
    link = _link_part(cfg, beam)
    r = link.realization
    write_channel_csv(r.h_cv, _out_path(cfg, "h_cv.csv"))
    write_channel_csv(r.h_em, _out_path(cfg, "h_em.csv"))
    write_channel_csv(r.h_er, _out_path(cfg, "h_er.csv"))
    figure_channel_heatmap(
        [("conventional", r.h_cv), ("pattern domain", r.h_em), ("reconfigurable", r.h_er)],
        _out_path(cfg, "channels.png"),
    )
    write_summary(
        RunSummary(
            command="channel",
            config=cfg.to_dict(),
            gamma=r.gamma,
            snr=link.snr,
            rate_bits_per_hz=link.rate,
            tx_selection=tuple(int(i) for i in beam.tx_selection),
            rx_selection=tuple(int(i) for i in link.rx_selection),
            metrics={
                "nlos_paths": link.path_set.num_nlos,
                "include_los": link.path_set.los is not None,
            },
        ),
        _out_path(cfg, "summary.json"),
    )


def cmd_optimize(cfg: RunConfig):
    beam = _beam_part(cfg)
    target_db = power_db(
        float(
            beampattern(
                cfg.tx_array, beam.dictionary, beam.tx_selection, beam.weights, [beam.target]
            ).values[0]
        )
    )
    write_table_csv(
        ["element", "state"],
        [(i, int(s)) for i, s in enumerate(beam.tx_selection)],
        _out_path(cfg, "selection.csv"),
    )
    figure_beampattern(
        [("selected", beam.samples)],
        _out_path(cfg, "beampattern.png"),
        target_az_deg=cfg.target.az_deg,
    )
    write_summary(
        RunSummary(
            command="optimize",
            config=cfg.to_dict(),
            main_beam_db=beam.metrics.main_db,
            peak_sidelobe_db=beam.metrics.peak_sidelobe_db,
            tx_selection=tuple(int(i) for i in beam.tx_selection),
            metrics={"target_intensity_db": target_db, "solver": cfg.solver},
        ),
        _out_path(cfg, "summary.json"),
    )


def _delta(a: float, b: float) -> float:
    # equal infinities (both lobeless) compare as no difference
    return 0.0 if a == b else a - b


def cmd_compare(cfg: RunConfig):
    if cfg.baseline_state is None:
        raise ConfigError("baseline_state: required for the compare command")
    beam = _beam_part(cfg)
    base_selection = np.full(cfg.tx_array.num_elements, cfg.baseline_state, dtype=int)
    base_samples = beampattern(
        cfg.tx_array, beam.dictionary, base_selection, beam.weights, cfg.grid.directions()
    )
    base_metrics = sidelobe_metrics(base_samples, beam.target)
    write_beampattern_csv(beam.samples, _out_path(cfg, "beampattern_era.csv"))
    write_beampattern_csv(base_samples, _out_path(cfg, "beampattern_baseline.csv"))
    figure_beampattern(
        [("reconfigurable", beam.samples), ("fixed state", base_samples)],
        _out_path(cfg, "compare.png"),
        target_az_deg=cfg.target.az_deg,
    )
    era = {
        "main_beam_db": beam.metrics.main_db,
        "peak_sidelobe_db": beam.metrics.peak_sidelobe_db,
    }
    base = {
        "main_beam_db": base_metrics.main_db,
        "peak_sidelobe_db": base_metrics.peak_sidelobe_db,
    }
    delta = {
        "main_beam_gain_db": _delta(beam.metrics.main_db, base_metrics.main_db),
        "sidelobe_reduction_db": _delta(
            base_metrics.peak_sidelobe_db, beam.metrics.peak_sidelobe_db
        ),
    }
    if cfg.sidelobe_focus is not None:
        focus = cfg.sidelobe_focus
        base_focus = peak_in_window(base_samples, focus.az_deg, focus.halfwidth_deg)
        era["focus_sidelobe_db"] = beam.focus_db
        base["focus_sidelobe_db"] = base_focus
        delta["focus_sidelobe_reduction_db"] = _delta(base_focus, beam.focus_db)
    write_summary(
        RunSummary(
            command="compare",
            config=cfg.to_dict(),
            main_beam_db=beam.metrics.main_db,
            peak_sidelobe_db=beam.metrics.peak_sidelobe_db,
            tx_selection=tuple(int(i) for i in beam.tx_selection),
            metrics={"era": era, "baseline": base, "delta": delta},
        ),
        _out_path(cfg, "summary.json"),
    )


def _point_config(cfg: RunConfig, axis: str, value: float) -> RunConfig:
    if axis == "target_az_deg":
        return with_target(cfg, value, None)
    if axis == "seed":
        return replace(cfg, seed=int(value))
    return replace(
        cfg, link=LinkBudget(transmit_power=value, noise_variance=cfg.link.noise_variance)
    )


def cmd_sweep(cfg: RunConfig):
    if cfg.sweep is None:
        raise ConfigError("sweep: required for the sweep command")
    axis = cfg.sweep.axis
    rows = []
    for value in cfg.sweep.values:
        point = _point_config(cfg, axis, value)
        beam = _beam_part(point)
        link = _link_part(point, beam)
        cell = int(value) if axis == "seed" else float(value)
        rows.append(
            (
                cell,
                beam.metrics.main_db,
                beam.metrics.peak_sidelobe_db,
                link.snr,
                link.rate,
            )
        )
    write_table_csv(
        [axis, "main_beam_db", "peak_sidelobe_db", "snr", "rate_bits_per_hz"],
        rows,
        _out_path(cfg, "sweep.csv"),
    )
    x = [row[0] for row in rows]
    figure_sweep(
        x,
        [
            ("main beam", [row[1] for row in rows]),
            ("peak sidelobe", [row[2] for row in rows]),
        ],
        axis,
        "dB",
        _out_path(cfg, "sweep.png"),
    )
    write_summary(
        RunSummary(
            command="sweep",
            config=cfg.to_dict(),
            metrics={"axis": axis, "points": len(rows)},
        ),
        _out_path(cfg, "summary.json"),
    )


HANDLERS = {
    "beampattern": cmd_beampattern,
    "channel": cmd_channel,
    "optimize": cmd_optimize,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _effective_config(args)
        start = time.perf_counter()
        HANDLERS[args.command](cfg)
    except (ConfigError, SearchSpaceError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"elapsed {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
