"""End-to-end tests of the command line interface.

Each test drives ``main`` in process and inspects exit codes, stdout, and
the CSV files it writes. Exit code contract: 0 success, 1 check failure,
2 configuration error, 3 numerical blow-up.
"""

import json
import subprocess
import sys

import numpy as np
import pytest

from su4rabi.cli import RunConfig, main, parse_transition_key, transition_key
from su4rabi.errors import ConfigurationError
from su4rabi.models import ModelId


def read_csv(path):
    """Split a trace file into (metadata dict, header, data array)."""
    meta = {}
    header = None
    rows = []
    for line in path.read_text().splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(" = ")
            meta[key] = value
        elif header is None:
            header = line
        else:
            rows.append([float(x) for x in line.split(",")])
    return meta, header, np.array(rows)


class TestTransitionKeys:
    def test_round_trip(self):
        for tr in [(4, 1), (4, 2), (4, 3), (3, 1), (3, 2), (2, 1)]:
            assert parse_transition_key(transition_key(tr)) == tr

    def test_rejects_malformed(self):
        for bad in ("5", "412", "ab", "14", "44", "90"):
            with pytest.raises(ConfigurationError):
                parse_transition_key(bad)


class TestRunConfig:
    def test_json_round_trip_resonant(self):
        cfg = RunConfig(
            model=ModelId.II,
            kappas={(4, 3): 0.24, (3, 1): 0.4, (2, 1): 0.24},
            init=3,
            t_max=20.0,
            steps=2001,
            method="rk4",
        )
        assert RunConfig.from_json_dict(cfg.to_json_dict()) == cfg

    def test_json_round_trip_with_fields_and_amplitudes(self):
        cfg = RunConfig(
            model=ModelId.I,
            kappas={(4, 1): 0.7},
            fields={(4, 1): 4.3, (3, 2): 4.0, (2, 1): 2.0},
            init=((0.6, 0.0), (0.0, 0.8), (0.0, 0.0), (0.0, 0.0)),
        )
        data = json.loads(json.dumps(cfg.to_json_dict()))
        assert RunConfig.from_json_dict(data) == cfg

    def test_rejects_unknown_keys(self):
        with pytest.raises(ConfigurationError, match="unknown config keys"):
            RunConfig.from_json_dict({"model": "I", "bogus": 1})

    def test_rejects_resonant_plus_fields(self):
        with pytest.raises(ConfigurationError):
            RunConfig.from_json_dict(
                {"model": "I", "resonant": True, "fields": {"41": 4.0}}
            )

    def test_rejects_zero_span_multi_point_grid(self):
        with pytest.raises(ConfigurationError):
            RunConfig(model=ModelId.I, t_max=0.0, steps=100)


class TestVerify:
    def test_clean_run_passes(self, capsys):
        assert main(["verify"]) == 0
        out = capsys.readouterr().out
        assert "summary: 15 generators, 6 models" in out
        assert "(pass)" in out
        assert out.count("frame drift") == 6

    def test_injected_fault_is_caught(self, capsys):
        assert main(["verify", "--inject-fault", "scale-lambda1"]) == 1
        out = capsys.readouterr().out
        assert "FAIL" in out
        assert "trace-normalization" in out


class TestSimulate:
    def test_single_point_trace(self, tmp_path, capsys):
        out = tmp_path / "one.csv"
        code = main([
            "simulate", "--model", "I", "--kappa", "41=0.7",
            "--t-max", "0", "--steps", "1", "--out", str(out),
        ])
        assert code == 0
        meta, header, data = read_csv(out)
        assert header == "t,p1,p2,p3,p4"
        assert meta["model"] == "I"
        assert meta["fields"] == "resonant"
        assert data.shape == (1, 5)
        assert data[0] == pytest.approx([0.0, 1.0, 0.0, 0.0, 0.0], abs=1e-14)

    def test_trace_grid_and_normalization(self, tmp_path):
        out = tmp_path / "trace.csv"
        code = main([
            "simulate", "--model", "VI", "--kappa", "41=0.7", "43=0.24", "32=0.24",
            "--t-max", "10", "--steps", "101", "--out", str(out),
        ])
        assert code == 0
        _, _, data = read_csv(out)
        assert data.shape == (101, 5)
        assert data[:, 0] == pytest.approx(np.linspace(0.0, 10.0, 101), abs=1e-12)
        assert data[:, 1:].sum(axis=1) == pytest.approx(np.ones(101), abs=1e-9)

    def test_byte_stable_output(self, tmp_path):
        args = [
            "simulate", "--model", "III", "--kappa", "43=0.24", "32=0.24", "21=0.24",
            "--t-max", "5", "--steps", "501",
        ]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_rk4_method_agrees_with_spectral(self, tmp_path):
        base = [
            "simulate", "--model", "I", "--kappa", "41=0.7", "21=0.24",
            "--t-max", "5", "--steps", "5001",
        ]
        spath, rpath = tmp_path / "s.csv", tmp_path / "r.csv"
        assert main(base + ["--method", "spectral", "--out", str(spath)]) == 0
        assert main(base + ["--method", "rk4", "--out", str(rpath)]) == 0
        _, _, s = read_csv(spath)
        _, _, r = read_csv(rpath)
        assert np.abs(s[:, 1:] - r[:, 1:]).max() < 1e-6

    def test_amplitude_init(self, tmp_path):
        out = tmp_path / "amp.csv"
        code = main([
            "simulate", "--model", "I", "--kappa", "41=0.7",
            "--init", "0.6,0,0.8,0,0,0,0,0",
            "--t-max", "0", "--steps", "1", "--out", str(out),
        ])
        assert code == 0
        _, _, data = read_csv(out)
        assert data[0, 1:] == pytest.approx([0.36, 0.64, 0.0, 0.0], abs=1e-12)

    def test_show_frame_prints_detunings_and_matrix(self, tmp_path, capsys):
        code = main([
            "simulate", "--model", "I", "--kappa", "41=0.7", "32=0.24", "21=0.24",
            "--show-frame", "--t-max", "1", "--steps", "11",
            "--out", str(tmp_path / "t.csv"),
        ])
        assert code == 0
        out = capsys.readouterr().out
        assert "detuning 41: +0.000000000000e+00" in out
        assert "frame matrix" in out
        # resonant chain: bare couplings sit on the off-diagonal
        assert "+7.000000000000e-01" in out

    def test_config_file(self, tmp_path):
        cfg = RunConfig(
            model=ModelId.IV,
            kappas={(4, 3): 0.24, (4, 1): 0.7, (2, 1): 0.24},
            init=4,
            t_max=10.0,
            steps=201,
        )
        cfg_path = tmp_path / "run.json"
        cfg_path.write_text(json.dumps(cfg.to_json_dict()))
        out = tmp_path / "from_config.csv"
        assert main(["simulate", "--config", str(cfg_path), "--out", str(out)]) == 0
        meta, _, data = read_csv(out)
        assert meta["model"] == "IV"
        assert data.shape == (201, 5)

    def test_outdir_env_fallback(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SU4RABI_OUTDIR", str(tmp_path))
        code = main([
            "simulate", "--model", "I", "--kappa", "21=0.24",
            "--t-max", "1", "--steps", "11",
        ])
        assert code == 0
        assert (tmp_path / "trace.csv").exists()

    def test_missing_model_is_config_error(self, capsys):
        assert main(["simulate"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_bad_transition_key_exits_2(self):
        assert main(["simulate", "--model", "I", "--kappa", "90=0.1"]) == 2

    def test_forbidden_transition_exits_2(self):
        assert main(["simulate", "--model", "I", "--kappa", "43=0.1"]) == 2

    def test_nonnormalized_init_exits_2(self):
        assert main([
            "simulate", "--model", "I", "--kappa", "41=0.7",
            "--init", "1,0,1,0,0,0,0,0",
        ]) == 2

    def test_off_resonance_needs_flag(self, tmp_path):
        base = [
            "simulate", "--model", "I", "--kappa", "41=0.7",
            "--field", "41=4.3", "32=4.0", "21=2.0",
            "--t-max", "1", "--steps", "11",
            "--out", str(tmp_path / "off.csv"),
        ]
        assert main(base) == 2
        assert main(base + ["--allow-nonresonant"]) == 0

    def test_resonant_field_conflict_exits_2(self):
        assert main([
            "simulate", "--model", "I", "--resonant", "--field", "41=4.0",
        ]) == 2

    def test_rk4_blowup_exits_3(self, tmp_path):
        assert main([
            "simulate", "--model", "I", "--kappa", "41=1e8",
            "--method", "rk4", "--t-max", "10", "--steps", "101",
            "--out", str(tmp_path / "blow.csv"),
        ]) == 3


class TestFigure:
    def test_writes_four_cases(self, tmp_path, capsys):
        assert main(["figure", "9", "--out-dir", str(tmp_path)]) == 0
        for suffix in "abcd":
            assert (tmp_path / f"fig9{suffix}.csv").exists()

    def test_standard_grid_and_norms(self, tmp_path):
        assert main(["figure", "7", "--out-dir", str(tmp_path)]) == 0
        meta, header, data = read_csv(tmp_path / "fig7a.csv")
        assert header == "t,p1,p2,p3,p4"
        assert meta["model"] == "I"
        assert data.shape == (5001, 5)
        assert data[0, 0] == 0.0 and data[-1, 0] == pytest.approx(50.0, abs=1e-12)
        assert data[:, 1:].sum(axis=1) == pytest.approx(np.ones(5001), abs=1e-9)

    def test_case_initial_levels(self, tmp_path):
        assert main(["figure", "8", "--out-dir", str(tmp_path)]) == 0
        for level, suffix in enumerate("abcd", start=1):
            _, _, data = read_csv(tmp_path / f"fig8{suffix}.csv")
            expected = np.zeros(4)
            expected[level - 1] = 1.0
            assert data[0, 1:] == pytest.approx(expected, abs=1e-12)

    def test_detuned_figure_metadata(self, tmp_path):
        assert main(["figure", "10", "--out-dir", str(tmp_path)]) == 0
        meta, _, _ = read_csv(tmp_path / "fig10a.csv")
        assert meta["omega_field"] == "0.4 0.4 0.4"

    def test_other_figures_lack_extra_metadata(self, tmp_path):
        assert main(["figure", "11", "--out-dir", str(tmp_path)]) == 0
        meta, _, _ = read_csv(tmp_path / "fig11a.csv")
        assert "omega_field" not in meta

    def test_invalid_id_exits_2(self):
        assert main(["figure", "13"]) == 2


class TestSymmetryCommand:
    @pytest.mark.parametrize("pair", ["I:VI", "II:V", "III", "IV"])
    def test_pairs_pass(self, pair, capsys):
        assert main(["symmetry", pair]) == 0
        assert "max population deviation" in capsys.readouterr().out

    def test_unknown_pair_exits_2(self):
        assert main(["symmetry", "I:II"]) == 2


class TestReduceSu2Command:
    def test_default_passes(self, capsys):
        assert main(["reduce-su2"]) == 0
        out = capsys.readouterr().out
        assert "eigenvalues:" in out
        assert "closed-form deviation" in out

    def test_custom_kappa_passes(self):
        assert main(["reduce-su2", "--kappa", "0.5"]) == 0

    def test_nonpositive_kappa_exits_2(self):
        assert main(["reduce-su2", "--kappa", "-1"]) == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "su4rabi.cli", "verify"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "summary: 15 generators, 6 models" in proc.stdout
