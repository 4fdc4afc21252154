"""Tests for the configuration modules."""

import json
from pathlib import Path

import pytest

from patchsurvival.config import (
    ExperimentConfig,
    MessageTemplates,
    RuntimeConfig,
    experiments,
    get_experiment_config,
    get_message_templates,
    get_runtime_config,
)


class TestExperimentConfig:
    """Test cases for ExperimentConfig."""

    def test_load_from_default_location(self):
        """Test that config loads from the packaged JSON."""
        config = ExperimentConfig.load()
        assert config.solver.grid_intervals == 200
        assert config.solver.k_over_h2 == 0.25
        assert config.solver.trajectory_stride == 0

    def test_fate_thresholds(self):
        """Test the default fate thresholds."""
        fate = ExperimentConfig.load().fate
        assert fate.floor_frac == 1e-3
        assert fate.ceil_frac == 100.0
        assert fate.window == 50
        assert fate.reaction_ratio_floor == 0.05
        assert isinstance(fate.rate_checks, int)
        assert fate.rate_tolerance > 0.0
        assert fate.resolve_by_trend is True

    def test_scan_defaults(self):
        """Test scan defaults are typed."""
        scan = ExperimentConfig.load().scan
        assert isinstance(scan.pilot_divisions, int)
        assert scan.alpha_cap >= scan.alpha_start

    def test_every_preset_names_a_command(self):
        """Test that each run preset carries a known command."""
        presets = ExperimentConfig.load().presets
        expected = {
            "f1-extinction-profiles", "qc-f1-alpha100", "qc-vs-mu-nu1-f1", "alpha-min-f1-q2",
        }
        assert expected <= set(presets)
        for preset in presets.values():
            assert preset["command"] in {"simulate", "qc", "alpha-min", "sweep"}

    def test_missing_file(self, tmp_path):
        """Test that a missing file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            ExperimentConfig.load(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        """Test that malformed JSON raises ValueError."""
        path = tmp_path / "experiments.json"
        path.write_text("{not json")
        with pytest.raises(ValueError):
            ExperimentConfig.load(path)

    def test_custom_file(self, tmp_path):
        """Test loading an edited copy of the configuration."""
        data = json.loads((Path(experiments.__file__).parent / "experiments.json").read_text())
        data["solver"]["grid_intervals"] = 50
        path = tmp_path / "experiments.json"
        path.write_text(json.dumps(data))
        assert ExperimentConfig.load(path).solver.grid_intervals == 50

    def test_missing_section(self, tmp_path):
        """Test that a file without a section raises ValueError naming it."""
        data = json.loads((Path(experiments.__file__).parent / "experiments.json").read_text())
        del data["gamma"]
        path = tmp_path / "experiments.json"
        path.write_text(json.dumps(data))
        with pytest.raises(ValueError, match="gamma"):
            ExperimentConfig.load(path)

    def test_missing_field(self, tmp_path):
        """Test that a section without a field raises ValueError naming it."""
        data = json.loads((Path(experiments.__file__).parent / "experiments.json").read_text())
        del data["fate"]["window"]
        path = tmp_path / "experiments.json"
        path.write_text(json.dumps(data))
        with pytest.raises(ValueError, match="window"):
            ExperimentConfig.load(path)

    def test_integer_fields_are_cast(self, tmp_path):
        """Test that a float written for an integer setting is cast."""
        data = json.loads((Path(experiments.__file__).parent / "experiments.json").read_text())
        data["solver"]["grid_intervals"] = 64.0
        path = tmp_path / "experiments.json"
        path.write_text(json.dumps(data))
        intervals = ExperimentConfig.load(path).solver.grid_intervals
        assert intervals == 64 and isinstance(intervals, int)


class TestRuntimeConfig:
    """Test cases for RuntimeConfig."""

    def test_output_names(self):
        """Test the default output file names."""
        output = RuntimeConfig.load().output
        assert output.trajectory_file == "trajectory.csv"
        assert output.manifest_file == "manifest.json"
        assert "{time}" in output.snapshot_template

    def test_float_format(self):
        """Test that the float format follows significant_digits."""
        assert RuntimeConfig.load().output.float_format == "%.15g"

    def test_workers_env_var(self):
        """Test the worker-count environment variable name."""
        assert RuntimeConfig.load().workers_env_var == "PATCHSURVIVAL_WORKERS"


class TestMessageTemplates:
    """Test cases for MessageTemplates."""

    def test_templates_format(self):
        """Test that templates accept their placeholders."""
        messages = MessageTemplates.load()
        line = messages.fate.summary.format(outcome="Growth", reason="PopulationCeiling", time=1.5)
        assert "Growth" in line
        assert "1.5" in line
        assert messages.files.written.format(path="x.csv") == "wrote x.csv"


class TestGlobalConfigAccess:
    """Test cases for the singleton getters."""

    def test_singletons(self):
        """Test that each getter returns the same instance."""
        assert get_experiment_config() is get_experiment_config()
        assert get_runtime_config() is get_runtime_config()
        assert get_message_templates() is get_message_templates()
