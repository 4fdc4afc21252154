"""
patchsurvival: survival of a population on a bounded habitat.

Integrates u_t = D (u^(nu-1) u_x)_x + a u^mu with absorbing boundaries,
classifies each run as extinction or growth, and estimates the critical
survival parameter Q_c and the minimum concentration alpha_min.
"""

__version__ = "0.1.0"

from patchsurvival.constants import Family, Outcome, StopReason, Trend
from patchsurvival.dist import InitialProfile, solve_gamma
from patchsurvival.exceptions import PatchSurvivalError
from patchsurvival.scaling import ModelExponents, PhysicalParams, compute_q, nondimensionalize
from patchsurvival.solver import FatePolicy, GridSpec, classify_fate, run
from patchsurvival.threshold import estimate_alpha_min, estimate_qc, sweep

__all__ = [
    "__version__",
    "Family",
    "Outcome",
    "StopReason",
    "Trend",
    "InitialProfile",
    "solve_gamma",
    "PatchSurvivalError",
    "ModelExponents",
    "PhysicalParams",
    "compute_q",
    "nondimensionalize",
    "FatePolicy",
    "GridSpec",
    "classify_fate",
    "run",
    "estimate_alpha_min",
    "estimate_qc",
    "sweep",
]
