"""Tests for the command-line front end."""

import json
import math

import pandas as pd
import pytest

from patchsurvival.cli import build_parser, main
from patchsurvival.constants import EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_OK

COARSE = ["--m", "20", "--k-over-h2", "1", "--t-max", "100"]


def run_cli(tmp_path, *argv):
    return main(["--quiet", "--output-dir", str(tmp_path), *argv])


class TestParser:
    """Test cases for the argument parser."""

    def test_commands(self):
        """Test that every command parses."""
        parser = build_parser()
        for command in ("simulate", "qc", "alpha-min", "sweep", "critical", "profile"):
            assert parser.parse_args([command]).command == command

    def test_scan_step_flags(self):
        """Test that --dq and --dalpha both set the scan step."""
        parser = build_parser()
        assert parser.parse_args(["qc", "--dq", "0.1"]).step == 0.1
        assert parser.parse_args(["alpha-min", "--dalpha", "0.2"]).step == 0.2

    def test_no_command(self, tmp_path):
        """Test that a bare invocation exits with an error."""
        assert run_cli(tmp_path) == EXIT_ERROR


class TestSimulate:
    """Test cases for the simulate command."""

    def test_growth(self, tmp_path, capsys):
        """Test a growing run and its output files."""
        status = run_cli(
            tmp_path, "simulate", "--mu", "1", "--nu", "1", "--q", "12", "--snapshots", "0,0.5",
            *COARSE,
        )
        assert status == EXIT_OK
        assert "fate: Growth" in capsys.readouterr().out
        trajectory = pd.read_csv(tmp_path / "trajectory.csv")
        assert list(trajectory.columns) == ["T", "N"]
        assert (tmp_path / "snapshot_T0.csv").exists()
        assert (tmp_path / "snapshot_T0.5.csv").exists()
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["command"] == "simulate"

    def test_inconclusive_exit(self, tmp_path):
        """Test exit status 2 for an Inconclusive run."""
        status = run_cli(
            tmp_path, "simulate", "--mu", "1", "--nu", "1", "--q", "12", "--m", "20",
            "--k-over-h2", "1", "--t-max", "1",
        )
        assert status == EXIT_INCONCLUSIVE

    def test_physical_mode_prints_q(self, tmp_path, capsys):
        """Test that physical parameters are reduced to Q."""
        status = run_cli(
            tmp_path, "simulate", "--mu", "1", "--nu", "1", "--a", "1", "--D", "1", "--l", "3.5",
            "--n0", "2", *COARSE,
        )
        assert status == EXIT_OK
        assert "Q = 12.25" in capsys.readouterr().out

    def test_mixed_modes_rejected(self, tmp_path, capsys):
        """Test that --q with physical parameters is an error."""
        status = run_cli(tmp_path, "simulate", "--mu", "1", "--nu", "1", "--q", "1", "--a", "1")
        assert status == EXIT_ERROR
        assert "Error:" in capsys.readouterr().err

    def test_missing_exponent(self, tmp_path, capsys):
        """Test that a missing --nu is reported."""
        assert run_cli(tmp_path, "simulate", "--mu", "1", "--q", "1") == EXIT_ERROR
        assert "--nu" in capsys.readouterr().err


class TestThresholdCommands:
    """Test cases for qc, alpha-min and sweep."""

    def test_qc(self, tmp_path, capsys):
        """Test a Q_c scan with an explicit start."""
        status = run_cli(
            tmp_path, "qc", "--mu", "1", "--nu", "1", "--start", "12", "--dq", "0.5", *COARSE
        )
        assert status == EXIT_OK
        assert "Q_c(1,1,f1,alpha=0) ~ 9.75" in capsys.readouterr().out
        trace = pd.read_csv(tmp_path / "scan_trace.csv")
        assert trace["outcome"].iloc[-1] == "Extinction"

    def test_qc_bad_start(self, tmp_path):
        """Test that a failed scan exits with an error but keeps its trace and manifest."""
        status = run_cli(
            tmp_path, "qc", "--mu", "1", "--nu", "1", "--start", "5", "--dq", "0.5", *COARSE
        )
        assert status == EXIT_ERROR
        trace = pd.read_csv(tmp_path / "scan_trace.csv")
        assert trace["value"].tolist() == [5.0]
        assert trace["outcome"].tolist() == ["Extinction"]
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["command"] == "qc"
        assert manifest["resolved"]["scan"]["start"] == 5.0

    def test_alpha_min_already_survives(self, tmp_path, capsys):
        """Test the notice printed when alpha_min is 0."""
        status = run_cli(
            tmp_path, "alpha-min", "--mu", "4", "--nu", "2", "--q", "50", *COARSE
        )
        assert status == EXIT_OK
        assert "already survives" in capsys.readouterr().out

    def test_sweep_with_failed_point(self, tmp_path):
        """Test that a failed sweep point gives exit status 1 and a full table."""
        status = run_cli(
            tmp_path, "sweep", "--task", "qc", "--axis", "mu", "--nu", "1", "--points", "0.5,1",
            "--step", "0.05", "--workers", "1", *COARSE,
        )
        assert status == EXIT_ERROR
        frame = pd.read_csv(tmp_path / "sweep.csv")
        assert frame["axis_value"].tolist() == [0.5, 1.0]
        assert frame["status"].iloc[1] == "ok"
        assert frame["estimate"].iloc[1] == pytest.approx(math.pi**2, rel=0.02)
        scans = json.loads((tmp_path / "manifest.json").read_text())["resolved"]["scans"]
        assert [entry["axis_value"] for entry in scans] == [0.5, 1.0]
        assert scans[1]["scan"]["step"] == 0.05
        assert scans[1]["scan"]["start"] == pytest.approx(2.0 * math.pi**2)

    def test_bad_points(self, tmp_path):
        """Test that an unparsable point list is an error."""
        status = run_cli(tmp_path, "sweep", "--nu", "1", "--points", "1:2")
        assert status == EXIT_ERROR


class TestCritical:
    """Test cases for the critical command."""

    def test_equal_exponents(self, tmp_path, capsys):
        """Test l_c = pi for mu = nu = 1, a = D = 1."""
        assert run_cli(tmp_path, "critical", "--mu", "1", "--nu", "1", "--a", "1", "--D", "1") == 0
        out = capsys.readouterr().out
        assert "l_c = 3.14159265" in out
        assert "l >= l_c" in out

    def test_maximum_size(self, tmp_path, capsys):
        """Test the reversed direction for mu > nu + 2."""
        status = run_cli(
            tmp_path, "critical", "--mu", "5", "--nu", "1", "--a", "1", "--D", "1", "--qc", "4"
        )
        assert status == EXIT_OK
        out = capsys.readouterr().out
        assert "l_c = 0.5" in out
        assert "MaximumSize" in out

    def test_degenerate_habitat(self, tmp_path, capsys):
        """Test that mu = nu + 2 has no critical habitat size."""
        status = run_cli(
            tmp_path, "critical", "--mu", "4", "--nu", "2", "--a", "1", "--D", "1", "--qc", "0.81"
        )
        assert status == EXIT_ERROR
        assert "n0 >= 0.9" in capsys.readouterr().out

    def test_degenerate_population(self, tmp_path, capsys):
        """Test n0_c for mu = nu + 2."""
        status = run_cli(
            tmp_path, "critical", "--mu", "4", "--nu", "2", "--a", "1", "--D", "1", "--qc", "0.81",
            "--target", "population",
        )
        assert status == EXIT_OK
        assert "n0_c = 0.9" in capsys.readouterr().out

    def test_equal_exponents_population(self, tmp_path, capsys):
        """Test that mu = nu leaves n0 unconstrained."""
        status = run_cli(
            tmp_path, "critical", "--mu", "2", "--nu", "2", "--a", "1", "--D", "1",
            "--target", "population",
        )
        assert status == EXIT_OK
        assert "does not constrain n0" in capsys.readouterr().out

    def test_unconditional(self, tmp_path, capsys):
        """Test that mu < nu reports unconditional survival."""
        status = run_cli(tmp_path, "critical", "--mu", "1", "--nu", "2", "--a", "1", "--D", "1")
        assert status == EXIT_ERROR
        assert "unconditional" in capsys.readouterr().out


class TestPresetsAndManifests:
    """Test cases for --preset and --manifest."""

    def test_profile_and_replay(self, tmp_path):
        """Test that a manifest repeats the recorded run."""
        assert run_cli(tmp_path, "profile", "--family", "f2", "--alphas", "0,1") == EXIT_OK
        frame = pd.read_csv(tmp_path / "profile.csv")
        assert list(frame.columns) == ["X", "alpha=0", "alpha=1"]
        (tmp_path / "profile.csv").unlink()

        assert main(["--quiet", "--manifest", str(tmp_path / "manifest.json")]) == EXIT_OK
        assert (tmp_path / "profile.csv").exists()

    def test_unknown_preset(self, tmp_path):
        """Test that an unknown preset is an error."""
        assert run_cli(tmp_path, "--preset", "no-such-preset") == EXIT_ERROR

    def test_preset_with_command(self, tmp_path):
        """Test that --preset and a command cannot be combined."""
        assert run_cli(tmp_path, "--preset", "f1-growth", "profile") == EXIT_ERROR

    def test_missing_manifest(self, tmp_path):
        """Test that a missing manifest is an error."""
        assert run_cli(tmp_path, "--manifest", str(tmp_path / "absent.json")) == EXIT_ERROR

    def test_qc_replay(self, tmp_path):
        """Test that replaying a qc manifest rewrites the same trace."""
        status = run_cli(
            tmp_path, "qc", "--mu", "1", "--nu", "1", "--start", "12", "--dq", "0.5", *COARSE
        )
        assert status == EXIT_OK
        original = (tmp_path / "scan_trace.csv").read_bytes()
        (tmp_path / "scan_trace.csv").unlink()

        assert main(["--quiet", "--manifest", str(tmp_path / "manifest.json")]) == EXIT_OK
        assert (tmp_path / "scan_trace.csv").read_bytes() == original


class TestDeterminism:
    """Test cases for repeated runs."""

    def test_simulate_twice(self, tmp_path):
        """Test that two identical simulate runs write identical files."""
        argv = [
            "simulate", "--mu", "1", "--nu", "1", "--q", "12", "--snapshots", "0,0.5", *COARSE
        ]
        first, second = tmp_path / "first", tmp_path / "second"
        assert run_cli(first, *argv) == run_cli(second, *argv)
        for name in ("trajectory.csv", "snapshot_T0.csv", "snapshot_T0.5.csv"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_qc_twice(self, tmp_path):
        """Test that two identical scans write identical traces."""
        argv = ["qc", "--mu", "1", "--nu", "1", "--start", "12", "--dq", "0.5", *COARSE]
        first, second = tmp_path / "first", tmp_path / "second"
        assert run_cli(first, *argv) == run_cli(second, *argv) == EXIT_OK
        assert (first / "scan_trace.csv").read_bytes() == (second / "scan_trace.csv").read_bytes()
