"""
Constants for patchsurvival.

This module contains true constants - values that never change during runtime
or across experiments: the enumerations shared by every module, CSV headers
and numerical tolerances that define equality of model exponents.

For values that DO change (grid resolution, fate thresholds, scan steps), see
the config/ module.
"""

from enum import Enum
from typing import Tuple


class Family(str, Enum):
    """Initial-distribution family selector."""

    HOMOGENEOUS = "homogeneous"
    SYMMETRIC_F1 = "f1"
    ASYMMETRIC_F2 = "f2"


class Outcome(str, Enum):
    """Classified fate of a population run."""

    EXTINCTION = "Extinction"
    GROWTH = "Growth"
    INCONCLUSIVE = "Inconclusive"


class StopReason(str, Enum):
    """Why the fate loop stopped integrating."""

    POPULATION_FLOOR = "PopulationFloor"
    DIFFUSION_DOMINATED = "DiffusionDominated"
    POPULATION_CEILING = "PopulationCeiling"
    BLOWUP_GUARD = "BlowupGuard"
    RATE_SETTLED = "RateSettled"
    HORIZON_REACHED = "HorizonReached"


class Trend(str, Enum):
    """Direction of N(T) over the trailing window at the stop time."""

    INCREASING = "Increasing"
    DECREASING = "Decreasing"
    FLAT = "Flat"


class Direction(str, Enum):
    """Survival direction of a critical habitat size."""

    MINIMUM_SIZE = "MinimumSize"
    MAXIMUM_SIZE = "MaximumSize"


class SweepAxis(str, Enum):
    """Parameter varied by a sweep."""

    MU = "mu"
    NU = "nu"
    Q = "q"


class ThresholdTask(str, Enum):
    """Critical value estimated at every sweep point."""

    QC = "qc"
    ALPHA_MIN = "alpha-min"


# Two exponents closer than this are treated as equal (mu = nu, mu = nu + 2)
EXPONENT_TOLERANCE = 1e-12

# Relative tolerance for the L = 1 / L = sqrt(Q) domain invariants
DOMAIN_TOLERANCE = 1e-12

# Smallest grid accepted by the solver
MIN_GRID_INTERVALS = 4

# CSV headers
TRAJECTORY_HEADER: Tuple[str, ...] = ("T", "N")
SNAPSHOT_HEADER: Tuple[str, ...] = ("X", "rho")
SWEEP_HEADER: Tuple[str, ...] = (
    "axis_value",
    "estimate",
    "bracket_lo",
    "bracket_hi",
    "evaluations",
    "status",
)
TRACE_HEADER: Tuple[str, ...] = ("value", "outcome")

# Sweep row statuses
STATUS_OK = "ok"
STATUS_ALREADY_SURVIVES = "already-survives"
STATUS_CAPPED = "capped"

# CLI exit codes
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2
