"""Tests for CSV and manifest output."""

import json

import numpy as np
import pandas as pd
import pytest

from patchsurvival import export
from patchsurvival.constants import Outcome, StopReason, Trend
from patchsurvival.exceptions import ConfigurationError
from patchsurvival.solver import FateReport, Grid, Snapshot, StateVector
from patchsurvival.threshold import SweepRow, ThresholdEstimate


@pytest.fixture
def report():
    """Small hand-built fate report with two snapshots."""
    rho = np.array([0.0, 0.5, 1.0, 0.5, 0.0])
    return FateReport(
        outcome=Outcome.EXTINCTION,
        stop_reason=StopReason.POPULATION_FLOOR,
        stop_time=0.3,
        times=np.array([0.0, 0.1, 0.2, 0.3]),
        populations=np.array([1.0, 0.5, 0.01, 0.0009]),
        trend=Trend.DECREASING,
        initial_population=1.0,
        final_state=StateVector(rho, 0.3),
        snapshots=[Snapshot(0.0, 0.0, rho), Snapshot(0.01, 0.1, rho / 2.0)],
    )


@pytest.fixture
def estimate():
    """Threshold estimate with a three-entry trace."""
    trace = ((1.2, Outcome.GROWTH), (1.0, Outcome.GROWTH), (0.8, Outcome.EXTINCTION))
    return ThresholdEstimate("Q", 0.8, 1.0, 0.9, 3, trace)


class TestCsv:
    """Test cases for the CSV writers."""

    def test_trajectory(self, tmp_path, report):
        """Test the trajectory header and values."""
        path = export.write_trajectory(report, tmp_path / "trajectory.csv")
        frame = pd.read_csv(path)
        assert list(frame.columns) == ["T", "N"]
        np.testing.assert_allclose(frame["N"], report.populations)

    def test_snapshots_named_by_time(self, tmp_path, report):
        """Test one file per snapshot, named from the requested time."""
        grid = Grid(m=4, L=1.0, k=0.1, t_max=1.0)
        paths = export.write_snapshots(report, grid, tmp_path / "out")
        assert [p.name for p in paths] == ["snapshot_T0.csv", "snapshot_T0.01.csv"]
        frame = pd.read_csv(paths[1])
        assert list(frame.columns) == ["X", "rho"]
        assert frame["X"].iloc[0] == -0.5
        assert frame["rho"].iloc[2] == 0.5

    def test_full_precision(self, tmp_path, report):
        """Test that values keep 15 significant digits."""
        report.populations = np.array([1.0 / 3.0, 0.1, 0.1, 0.1])
        path = export.write_trajectory(report, tmp_path / "t.csv")
        assert "0.333333333333333" in path.read_text()

    def test_sweep(self, tmp_path, estimate):
        """Test the sweep header and the NaN row of a failed point."""
        rows = [SweepRow(1.0, estimate, "ok"), SweepRow(1.5, None, "error: ScanError: x")]
        frame = pd.read_csv(export.write_sweep(rows, tmp_path / "sweep.csv"))
        assert list(frame.columns) == [
            "axis_value", "estimate", "bracket_lo", "bracket_hi", "evaluations", "status"
        ]
        assert frame["estimate"].iloc[0] == 0.9
        assert np.isnan(frame["estimate"].iloc[1])
        assert frame["status"].iloc[1] == "error: ScanError: x"

    def test_trace(self, tmp_path, estimate):
        """Test that the trace keeps evaluation order."""
        frame = pd.read_csv(export.write_trace(estimate, tmp_path / "trace.csv"))
        assert frame["value"].tolist() == [1.2, 1.0, 0.8]
        assert frame["outcome"].tolist() == ["Growth", "Growth", "Extinction"]

    def test_profiles(self, tmp_path):
        """Test side-by-side profile columns."""
        nodes = np.linspace(-0.5, 0.5, 3)
        path = export.write_profiles(nodes, {"alpha=0": np.ones(3)}, tmp_path / "p.csv")
        assert list(pd.read_csv(path).columns) == ["X", "alpha=0"]


class TestManifest:
    """Test cases for run manifests."""

    def test_round_trip(self, tmp_path):
        """Test that a written manifest reads back."""
        path = export.write_manifest(
            tmp_path / "manifest.json", "qc", {"mu": 4.0, "trend": Trend.FLAT},
            {"grid": {"m": np.int64(100)}},
        )
        payload = export.read_manifest(path)
        assert payload["command"] == "qc"
        assert payload["arguments"] == {"mu": 4.0, "trend": "Flat"}
        assert payload["resolved"]["grid"]["m"] == 100

    def test_missing(self, tmp_path):
        """Test that a missing manifest raises ConfigurationError."""
        with pytest.raises(ConfigurationError):
            export.read_manifest(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        """Test that malformed JSON raises ConfigurationError."""
        path = tmp_path / "manifest.json"
        path.write_text("{")
        with pytest.raises(ConfigurationError):
            export.read_manifest(path)

    def test_wrong_version(self, tmp_path):
        """Test that an unknown version raises ConfigurationError."""
        path = tmp_path / "manifest.json"
        path.write_text(json.dumps({"version": 99, "command": "qc", "arguments": {}}))
        with pytest.raises(ConfigurationError):
            export.read_manifest(path)
