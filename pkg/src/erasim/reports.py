"""Result serialization: summary JSON, CSV tables, and rendered figures.

Output bytes are a pure function of the data passed in: floats are written
with ``repr`` (shortest round-trip form), JSON key order is fixed, and figures
are rendered with the Agg backend at a fixed size and dpi.  Nonfinite dB
values (empty sidelobe regions) serialize as JSON null and as ``-inf`` text in
CSV cells.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .beamforming import BeampatternSamples, power_db

__all__ = [
    "RunSummary",
    "write_summary",
    "write_beampattern_csv",
    "write_channel_csv",
    "read_channel_csv",
    "write_table_csv",
    "figure_beampattern",
    "figure_channel_heatmap",
    "figure_sweep",
]

FIGSIZE = (8.0, 4.5)
DPI = 120


def _fmt(x: float) -> str:
    return repr(float(x))


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return _json_safe(float(value))
    return value


@dataclass(frozen=True)
class RunSummary:
    """Everything a run reports besides its data files.

    ``config`` is the effective configuration echo.  ``elapsed_seconds`` is
    carried for display but never serialized, keeping outputs byte-stable.
    """

    command: str
    config: dict
    gamma: float | None = None
    main_beam_db: float | None = None
    peak_sidelobe_db: float | None = None
    snr: float | None = None
    rate_bits_per_hz: float | None = None
    tx_selection: tuple[int, ...] | None = None
    rx_selection: tuple[int, ...] | None = None
    metrics: dict = field(default_factory=dict)
    elapsed_seconds: float | None = None

    def __post_init__(self):
        for key, side in (("tx_array", self.tx_selection), ("rx_array", self.rx_selection)):
            if side is None or key not in self.config:
                continue
            arr = self.config[key]
            if len(side) != arr["n_horizontal"] * arr["n_vertical"]:
                raise ValueError(f"{key} selection length must match the element count")

    def to_json_dict(self) -> dict:
        return _json_safe(
            {
                "command": self.command,
                "config": self.config,
                "gamma": self.gamma,
                "main_beam_db": self.main_beam_db,
                "peak_sidelobe_db": self.peak_sidelobe_db,
                "snr": self.snr,
                "rate_bits_per_hz": self.rate_bits_per_hz,
                "tx_selection": None
                if self.tx_selection is None
                else [int(i) for i in self.tx_selection],
                "rx_selection": None
                if self.rx_selection is None
                else [int(i) for i in self.rx_selection],
                "metrics": self.metrics,
            }
        )


def write_summary(summary: RunSummary, path: str):
    with open(path, "w") as fh:
        json.dump(summary.to_json_dict(), fh, indent=2)
        fh.write("\n")


def write_beampattern_csv(samples: BeampatternSamples, path: str):
    lines = ["az_deg,el_deg,intensity_db"]
    for d, v in zip(samples.directions, samples.values):
        lines.append(f"{_fmt(d.azimuth_deg)},{_fmt(d.elevation_deg)},{_fmt(power_db(v))}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_channel_csv(h: np.ndarray, path: str):
    h = np.asarray(h)
    if h.ndim != 2:
        raise ValueError("channel dump expects a matrix")
    lines = ["row,col,re,im"]
    for r in range(h.shape[0]):
        for c in range(h.shape[1]):
            v = complex(h[r, c])
            lines.append(f"{r},{c},{_fmt(v.real)},{_fmt(v.imag)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_channel_csv(path: str) -> np.ndarray:
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "row,col,re,im":
            raise ValueError(f"{path}: unexpected header {header!r}")
        entries = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            r, c, re, im = line.split(",")
            entries.append((int(r), int(c), float(re), float(im)))
    if not entries:
        raise ValueError(f"{path}: no data rows")
    rows = max(e[0] for e in entries) + 1
    cols = max(e[1] for e in entries) + 1
    h = np.zeros((rows, cols), dtype=complex)
    for r, c, re, im in entries:
        h[r, c] = re + 1j * im
    return h


def write_table_csv(header: Sequence[str], rows: Sequence[Sequence], path: str):
    """Generic numeric table; floats via repr, everything else via str."""
    lines = [",".join(header)]
    for row in rows:
        cells = [_fmt(v) if isinstance(v, float) else str(v) for v in row]
        lines.append(",".join(cells))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _db_curve(samples: BeampatternSamples, floor_db: float) -> np.ndarray:
    return np.maximum(samples.values_db(), floor_db)


def figure_beampattern(
    curves: Sequence[tuple[str, BeampatternSamples]],
    path: str,
    target_az_deg: float | None = None,
):
    """Azimuth-cut intensity plot, one labeled curve per entry."""
    peaks = [power_db(float(s.values.max())) for _, s in curves if s.values.max() > 0]
    top = max(peaks) if peaks else 0.0
    floor = top - 60.0
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    for label, samples in curves:
        ax.plot(samples.azimuths_deg(), _db_curve(samples, floor), label=label, linewidth=1.2)
    if target_az_deg is not None:
        ax.axvline(target_az_deg, color="gray", linestyle=":", linewidth=1.0, label="target")
    ax.set_xlabel("azimuth (deg)")
    ax.set_ylabel("intensity (dB)")
    ax.set_ylim(floor, top + 3.0)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="lower center", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def figure_channel_heatmap(matrices: Sequence[tuple[str, np.ndarray]], path: str):
    """Magnitude heatmaps of one or more channel matrices, side by side."""
    fig, axes = plt.subplots(
        1, len(matrices), figsize=(4.0 * len(matrices), 3.5), dpi=DPI, squeeze=False
    )
    for ax, (label, h) in zip(axes[0], matrices):
        im = ax.imshow(np.abs(np.asarray(h)), aspect="auto", cmap="viridis")
        ax.set_title(label, fontsize=9)
        ax.set_xlabel("column")
        ax.set_ylabel("row")
        fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def figure_sweep(
    x: Sequence[float],
    series: Sequence[tuple[str, Sequence[float]]],
    xlabel: str,
    ylabel: str,
    path: str,
):
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    for label, values in series:
        vals = np.asarray(values, dtype=float)
        finite = vals[np.isfinite(vals)]
        floor = finite.min() - 10.0 if finite.size else 0.0
        ax.plot(x, np.nan_to_num(vals, neginf=floor), marker="o", markersize=3, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
