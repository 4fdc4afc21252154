"""
Experiment configuration for patchsurvival.

Holds the numerical parameters a study tunes:

- grid resolution and time horizon
- fate-classification thresholds
- scan starts, steps and pilot settings
- gamma(alpha) root-finder settings
- run presets, each a CLI command plus its arguments
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

from patchsurvival.config.loader import build_section, read_json


@dataclass(frozen=True)
class SolverDefaults:
    """
    Grid and stepping defaults.

    Attributes:
        grid_intervals: Node intervals m
        k_over_h2: Time step as a multiple of h^2
        t_max: Integration horizon
        clamp_tolerance: Negative values below minus this are counted when clamped
        stability_tolerance: Negative values below minus this abort the run
        density_floor: Floor inside rho^(nu-1) for nu < 1
        trajectory_stride: Record N(T) every this many steps, 0 for automatic
        trajectory_samples: Upper bound on recorded N(T) samples when automatic
    """

    grid_intervals: int
    k_over_h2: float
    t_max: float
    clamp_tolerance: float
    stability_tolerance: float
    density_floor: float
    trajectory_stride: int
    trajectory_samples: int


@dataclass(frozen=True)
class FateThresholds:
    """Thresholds turning an N(T) trajectory into a fate."""

    floor_frac: float
    ceil_frac: float
    window: int
    blowup_cap: float
    reaction_ratio_floor: float
    rate_interval: float
    rate_checks: int
    rate_tolerance: float
    resolve_by_trend: bool


@dataclass(frozen=True)
class ScanDefaults:
    """
    Defaults for the descending Q and alpha scans.

    The Q start is max(q_start_min, q_start_factor * pi^2 / mu). Alpha scans
    never start above alpha_cap.
    """

    q_start_min: float
    q_start_factor: float
    q_step: float
    alpha_start: float
    alpha_cap: float
    alpha_step: float
    refine_tol: float
    pilot_divisions: int
    pilot_step_fraction: float


@dataclass(frozen=True)
class GammaSolver:
    tolerance: float
    max_doublings: int


@dataclass(frozen=True)
class ExperimentConfig:
    solver: SolverDefaults
    fate: FateThresholds
    scan: ScanDefaults
    gamma: GammaSolver
    presets: Dict[str, Dict[str, Any]]

    @classmethod
    def load(cls, config_path: Optional[Path] = None) -> "ExperimentConfig":
        """
        Read experiments.json (or config_path).

        Args:
            config_path: Alternative file with the same layout

        Returns:
            ExperimentConfig instance

        Raises:
            FileNotFoundError: If the file is missing
            ValueError: If it is not valid JSON or lacks a setting
        """
        data = read_json("experiments.json", config_path)
        return cls(
            solver=build_section(SolverDefaults, data, "solver"),
            fate=build_section(FateThresholds, data, "fate"),
            scan=build_section(ScanDefaults, data, "scan"),
            gamma=build_section(GammaSolver, data, "gamma"),
            presets={name: dict(p) for name, p in data.get("presets", {}).items()},
        )


_experiment_config: Optional[ExperimentConfig] = None


def get_experiment_config(config_path: Optional[Path] = None) -> ExperimentConfig:
    """
    Return the process-wide ExperimentConfig, loading it on first use.

    Example:
        >>> get_experiment_config().solver.grid_intervals
        200
    """
    global _experiment_config
    if _experiment_config is None:
        _experiment_config = ExperimentConfig.load(config_path)
    return _experiment_config
