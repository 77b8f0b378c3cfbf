import hashlib
import json
import math

import numpy as np
import pytest

from erasim.cli import main
from erasim.patterns import selection_matrix
from erasim.reports import read_channel_csv

SUMMARY_KEYS = [
    "command",
    "config",
    "gamma",
    "main_beam_db",
    "peak_sidelobe_db",
    "snr",
    "rate_bits_per_hz",
    "tx_selection",
    "rx_selection",
    "metrics",
]


def write_config(tmp_path, obj, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def read_summary(out_dir):
    return json.loads((out_dir / "summary.json").read_text())


def hash_tree(out_dir):
    return {
        p.name: hashlib.sha256(p.read_bytes()).hexdigest()
        for p in sorted(out_dir.iterdir())
    }


def read_table(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


class TestBeampatternCommand:
    def test_default_run(self, tmp_path):
        out = tmp_path / "out"
        assert main(["beampattern", "--out", str(out)]) == 0
        lines = (out / "beampattern.csv").read_text().splitlines()
        assert lines[0] == "az_deg,el_deg,intensity_db"
        assert len(lines) == 722
        assert (out / "beampattern.png").stat().st_size > 1000
        data = read_summary(out)
        assert list(data) == SUMMARY_KEYS
        assert data["command"] == "beampattern"
        assert data["tx_selection"] == [2] * 12
        assert data["rx_selection"] is None
        assert data["metrics"]["grid_points"] == 721
        assert data["config"]["seed"] == 0
        assert data["config"]["target"] == {"az_deg": 135.0, "el_deg": 90.0}

    def test_phase_gradient_flags(self, tmp_path):
        out = tmp_path / "out"
        assert (
            main(
                [
                    "beampattern",
                    "--out",
                    str(out),
                    "--feed",
                    "phase-gradient",
                    "--step-deg",
                    "180",
                ]
            )
            == 0
        )
        data = read_summary(out)
        assert data["config"]["feed"] == {"kind": "phase-gradient", "step_deg": 180.0}

    def test_single_element_has_null_sidelobe(self, tmp_path):
        cfg = write_config(tmp_path, {"tx_array": {"n_horizontal": 1}})
        out = tmp_path / "out"
        assert main(["beampattern", "--config", cfg, "--out", str(out)]) == 0
        assert read_summary(out)["peak_sidelobe_db"] is None

    def test_target_override(self, tmp_path):
        out = tmp_path / "out"
        assert main(["beampattern", "--out", str(out), "--target-az-deg", "45"]) == 0
        data = read_summary(out)
        assert data["config"]["target"]["az_deg"] == 45.0
        assert data["tx_selection"] == [0] * 12

    def test_nested_output_dir(self, tmp_path):
        out = tmp_path / "a" / "b" / "out"
        assert main(["beampattern", "--out", str(out)]) == 0
        assert (out / "summary.json").exists()


class TestErrorPaths:
    def test_missing_config_file(self, tmp_path, capsys):
        assert main(["beampattern", "--config", str(tmp_path / "nope.json")]) == 2
        assert "config error: cannot read config" in capsys.readouterr().err

    def test_config_syntax_error(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{oops")
        assert main(["beampattern", "--config", str(path)]) == 2
        assert "config syntax error" in capsys.readouterr().err

    def test_unknown_field_named(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"tx_array": {"rows": 2}})
        assert main(["beampattern", "--config", cfg]) == 2
        assert "tx_array.rows" in capsys.readouterr().err

    def test_negative_seed_flag(self, capsys):
        assert main(["beampattern", "--seed", "-3"]) == 2
        assert "seed" in capsys.readouterr().err

    def test_phase_gradient_needs_step(self, capsys):
        assert main(["beampattern", "--feed", "phase-gradient"]) == 2
        assert "feed.step_deg" in capsys.readouterr().err

    def test_compare_needs_baseline(self, tmp_path, capsys):
        assert main(["compare", "--out", str(tmp_path / "out")]) == 2
        assert "baseline_state" in capsys.readouterr().err

    def test_sweep_needs_axis(self, tmp_path, capsys):
        assert main(["sweep", "--out", str(tmp_path / "out")]) == 2
        assert "sweep" in capsys.readouterr().err

    def test_exhaustive_beyond_guard_is_refused(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"tx_array": {"n_horizontal": 4, "n_vertical": 4}})
        out = tmp_path / "out"
        assert main(["optimize", "--config", cfg, "--out", str(out), "--solver", "exhaustive"]) == 2
        err = capsys.readouterr().err
        assert "exceeds the guard" in err
        assert "3^16" in err


class TestChannelCommand:
    CFG = {
        "scenario": {"num_clusters": 1, "paths_per_cluster": [3]},
        "grid": {"az_start_deg": 135, "az_stop_deg": 135, "step_deg": 1},
    }

    def test_outputs_and_factorization(self, tmp_path):
        cfg = write_config(tmp_path, self.CFG)
        out = tmp_path / "out"
        assert main(["channel", "--config", cfg, "--out", str(out)]) == 0
        data = read_summary(out)
        assert data["command"] == "channel"
        assert data["gamma"] == pytest.approx(math.sqrt(12.0 / 4.0))
        assert data["snr"] > 0
        assert data["rate_bits_per_hz"] == pytest.approx(math.log2(1 + data["snr"]))
        assert data["metrics"] == {"nlos_paths": 3, "include_los": True}

        h_cv = read_channel_csv(str(out / "h_cv.csv"))
        h_em = read_channel_csv(str(out / "h_em.csv"))
        h_er = read_channel_csv(str(out / "h_er.csv"))
        assert h_cv.shape == (1, 12)
        assert h_em.shape == (3, 36)
        assert h_er.shape == (1, 12)
        # the dumped matrices satisfy the selection factorization exactly
        d = selection_matrix(data["rx_selection"], 3)
        b = selection_matrix(data["tx_selection"], 3)
        recomposed = data["gamma"] * d @ h_em @ b.T
        np.testing.assert_allclose(recomposed, h_er, atol=1e-10)
        assert (out / "channels.png").stat().st_size > 1000

    def test_single_pattern_dictionary_collapses(self, tmp_path):
        cfg = write_config(
            tmp_path,
            {
                "dictionary": {"kind": "isotropic", "size": 1},
                "scenario": {"num_clusters": 1, "paths_per_cluster": [2]},
                "grid": {"az_start_deg": 135, "az_stop_deg": 135, "step_deg": 1},
            },
        )
        out = tmp_path / "out"
        assert main(["channel", "--config", cfg, "--out", str(out)]) == 0
        assert (out / "h_er.csv").read_bytes() == (out / "h_cv.csv").read_bytes()


class TestOptimizeCommand:
    def test_selection_table(self, tmp_path):
        out = tmp_path / "out"
        assert main(["optimize", "--out", str(out)]) == 0
        header, rows = read_table(out / "selection.csv")
        assert header == ["element", "state"]
        assert rows == [[str(i), "2"] for i in range(12)]
        data = read_summary(out)
        assert data["metrics"]["solver"] == "greedy"
        # the target sits on the grid, so its intensity is the main-beam read
        assert data["metrics"]["target_intensity_db"] == pytest.approx(
            data["main_beam_db"], abs=1e-12
        )

    def test_exhaustive_matches_greedy_when_feasible(self, tmp_path):
        base = {
            "tx_array": {"n_horizontal": 4},
            "dictionary": {"kind": "isotropic", "size": 2},
            "grid": {"az_start_deg": 135, "az_stop_deg": 135, "step_deg": 1},
        }
        cfg = write_config(tmp_path, base)
        out_g = tmp_path / "g"
        out_e = tmp_path / "e"
        assert main(["optimize", "--config", cfg, "--out", str(out_g)]) == 0
        assert (
            main(["optimize", "--config", cfg, "--out", str(out_e), "--solver", "exhaustive"])
            == 0
        )
        g = read_summary(out_g)
        e = read_summary(out_e)
        assert e["metrics"]["target_intensity_db"] == pytest.approx(
            g["metrics"]["target_intensity_db"], abs=1e-12
        )


class TestCompareCommand:
    def test_reconfigurable_beats_fixed_state(self, tmp_path):
        cfg = write_config(
            tmp_path,
            {"baseline_state": 1, "sidelobe_focus": {"az_deg": 45}},
        )
        out = tmp_path / "out"
        assert main(["compare", "--config", cfg, "--out", str(out)]) == 0
        data = read_summary(out)
        delta = data["metrics"]["delta"]
        assert delta["main_beam_gain_db"] > 1.0
        assert delta["focus_sidelobe_reduction_db"] > 0.0
        era = data["metrics"]["era"]
        base = data["metrics"]["baseline"]
        assert era["main_beam_db"] == pytest.approx(
            base["main_beam_db"] + delta["main_beam_gain_db"]
        )
        for name in ("beampattern_era.csv", "beampattern_baseline.csv", "compare.png"):
            assert (out / name).exists()

    def test_single_pattern_dictionary_has_zero_delta(self, tmp_path):
        cfg = write_config(
            tmp_path,
            {
                "dictionary": {"kind": "isotropic", "size": 1},
                "baseline_state": 0,
                "sidelobe_focus": {"az_deg": 45},
            },
        )
        out = tmp_path / "out"
        assert main(["compare", "--config", cfg, "--out", str(out)]) == 0
        delta = read_summary(out)["metrics"]["delta"]
        assert delta == {
            "main_beam_gain_db": 0.0,
            "sidelobe_reduction_db": 0.0,
            "focus_sidelobe_reduction_db": 0.0,
        }
        assert (out / "beampattern_era.csv").read_bytes() == (
            out / "beampattern_baseline.csv"
        ).read_bytes()


class TestSweepCommand:
    def test_target_axis_row_count(self, tmp_path):
        cfg = write_config(
            tmp_path,
            {
                "sweep": {"axis": "target_az_deg", "start": 45, "stop": 135, "step": 5},
                "grid": {"az_start_deg": 0, "az_stop_deg": 180, "step_deg": 1},
            },
        )
        out = tmp_path / "out"
        assert main(["sweep", "--config", cfg, "--out", str(out)]) == 0
        header, rows = read_table(out / "sweep.csv")
        assert header == [
            "target_az_deg",
            "main_beam_db",
            "peak_sidelobe_db",
            "snr",
            "rate_bits_per_hz",
        ]
        assert len(rows) == 19
        assert rows[0][0] == "45.0"
        assert rows[-1][0] == "135.0"
        data = read_summary(out)
        assert data["metrics"] == {"axis": "target_az_deg", "points": 19}
        assert (out / "sweep.png").stat().st_size > 1000

    def test_single_point_matches_single_runs(self, tmp_path):
        base = {
            "scenario": {"num_clusters": 1, "paths_per_cluster": [2]},
            "grid": {"az_start_deg": 0, "az_stop_deg": 180, "step_deg": 1},
        }
        cfg_single = write_config(tmp_path, base, "single.json")
        sweep_obj = dict(base)
        sweep_obj["sweep"] = {"axis": "target_az_deg", "values": [100]}
        cfg_sweep = write_config(tmp_path, sweep_obj, "sweep.json")

        out_b = tmp_path / "b"
        out_c = tmp_path / "c"
        out_s = tmp_path / "s"
        args = ["--target-az-deg", "100"]
        assert main(["beampattern", "--config", cfg_single, "--out", str(out_b)] + args) == 0
        assert main(["channel", "--config", cfg_single, "--out", str(out_c)] + args) == 0
        assert main(["sweep", "--config", cfg_sweep, "--out", str(out_s)]) == 0

        _, rows = read_table(out_s / "sweep.csv")
        assert len(rows) == 1
        row = [float(v) for v in rows[0]]
        beam = read_summary(out_b)
        link = read_summary(out_c)
        assert row[0] == 100.0
        assert row[1] == beam["main_beam_db"]
        assert row[2] == beam["peak_sidelobe_db"]
        assert row[3] == link["snr"]
        assert row[4] == link["rate_bits_per_hz"]

    def test_seed_axis_standard_error_scaling(self, tmp_path):
        # quadrupling the number of trials halves the standard error
        def snr_se(stop_seed, name):
            cfg = write_config(
                tmp_path,
                {
                    "scenario": {
                        "include_los": False,
                        "num_clusters": 1,
                        "paths_per_cluster": [4],
                        "az_range_deg": [125, 145],
                        "el_range_deg": [80, 100],
                    },
                    "grid": {"az_start_deg": 135, "az_stop_deg": 135, "step_deg": 1},
                    "sweep": {"axis": "seed", "start": 0, "stop": stop_seed, "step": 1},
                },
                name,
            )
            out = tmp_path / f"out{stop_seed}"
            assert main(["sweep", "--config", cfg, "--out", str(out)]) == 0
            _, rows = read_table(out / "sweep.csv")
            snr = np.array([float(r[3]) for r in rows])
            return np.std(snr, ddof=1) / math.sqrt(len(snr))

        se_small = snr_se(39, "s40.json")
        se_large = snr_se(159, "s160.json")
        assert 0.35 < se_large / se_small < 0.7


class TestDeterminism:
    def test_repeat_runs_are_byte_identical(self, tmp_path):
        cfg = write_config(
            tmp_path,
            {
                "scenario": {"num_clusters": 1, "paths_per_cluster": [2]},
                "grid": {"az_start_deg": 0, "az_stop_deg": 180, "step_deg": 1},
            },
        )
        out = tmp_path / "out"
        assert main(["channel", "--config", cfg, "--out", str(out)]) == 0
        first = hash_tree(out)
        assert main(["channel", "--config", cfg, "--out", str(out)]) == 0
        assert hash_tree(out) == first

    def test_seed_changes_the_draw(self, tmp_path):
        # isotropic states keep the conventional channel sensitive to the
        # drawn path angles (a steered state can zero out stray paths)
        cfg = write_config(
            tmp_path,
            {
                "dictionary": {"kind": "isotropic", "size": 2},
                "scenario": {"num_clusters": 1, "paths_per_cluster": [2]},
                "grid": {"az_start_deg": 135, "az_stop_deg": 135, "step_deg": 1},
            },
        )
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        assert main(["channel", "--config", cfg, "--out", str(out_a), "--seed", "1"]) == 0
        assert main(["channel", "--config", cfg, "--out", str(out_b), "--seed", "2"]) == 0
        assert (out_a / "h_cv.csv").read_bytes() != (out_b / "h_cv.csv").read_bytes()
