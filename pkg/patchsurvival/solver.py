"""
Linearized Crank-Nicolson solver and fate classification for patchsurvival.

Each step solves a tridiagonal system for the interior increments
W_i = rho_{i,j+1} - rho_{i,j}:

    p_{i-1} W_{i-1} - 2 (p_i + h^2/k) W_i + p_{i+1} W_{i+1}
        = -(2/nu) (rho_{i+1}^nu - 2 rho_i^nu + rho_{i-1}^nu) - 2 h^2 rho_i^mu

with p = rho^(nu-1) at the current level and W_0 = W_m = 0. The matrix is
column diagonally dominant, so Thomas elimination needs no pivoting.

Stepping and the per-step fate checks run inside numba kernels; one call
advances a whole segment of steps. Python only orchestrates segments
(snapshot times and, for mu = nu, the separable-rate samples) and builds the
FateReport.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from numba import njit

from patchsurvival.config import ExperimentConfig, get_experiment_config
from patchsurvival.constants import MIN_GRID_INTERVALS, Outcome, StopReason, Trend
from patchsurvival.dist import sample_profile
from patchsurvival.exceptions import (
    ConfigurationError,
    DomainError,
    SingularSystemError,
    StabilityError,
)
from patchsurvival.scaling import ModelExponents, NondimProblem
from utils.validation_utils import is_positive, validate_grid

logger = logging.getLogger(__name__)

# Kernel status codes
_RUNNING = 0
_FLOOR = 1
_CEILING = 2
_BLOWUP = 3
_DIFFUSION = 4
_UNSTABLE = 5
_SINGULAR = 6
_RATE_GROWTH = 7
_RATE_DECAY = 8

_STOP_TABLE = {
    _RUNNING: (Outcome.INCONCLUSIVE, StopReason.HORIZON_REACHED),
    _FLOOR: (Outcome.EXTINCTION, StopReason.POPULATION_FLOOR),
    _DIFFUSION: (Outcome.EXTINCTION, StopReason.DIFFUSION_DOMINATED),
    _CEILING: (Outcome.GROWTH, StopReason.POPULATION_CEILING),
    _BLOWUP: (Outcome.GROWTH, StopReason.BLOWUP_GUARD),
    _RATE_GROWTH: (Outcome.GROWTH, StopReason.RATE_SETTLED),
    _RATE_DECAY: (Outcome.EXTINCTION, StopReason.RATE_SETTLED),
}

# Relative difference below which two populations count as equal for the trend
_TREND_TOLERANCE = 1e-12


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------


@njit(cache=True)
def _thomas_kernel(lower, diag, upper, rhs, x, cp, dp):  # pragma: no cover - compiled
    """
    Thomas elimination. lower[0] and upper[n-1] are ignored.

    Returns 0 on success, 1 on a zero pivot.
    """
    n = diag.shape[0]
    pivot = diag[0]
    if pivot == 0.0:
        return 1
    cp[0] = upper[0] / pivot if n > 1 else 0.0
    dp[0] = rhs[0] / pivot
    for i in range(1, n):
        pivot = diag[i] - lower[i] * cp[i - 1]
        if pivot == 0.0:
            return 1
        cp[i] = upper[i] / pivot if i < n - 1 else 0.0
        dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / pivot
    x[n - 1] = dp[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return 0


@njit(cache=True)
def _mobility(value, nu, floor):  # pragma: no cover - compiled
    if nu == 1.0:
        return 1.0
    if nu > 1.0:
        return value ** (nu - 1.0)
    return max(value, floor) ** (nu - 1.0)


# fmt: off
@njit(cache=True)
def _step_kernel(
    rho, out, h, ratio, mu, nu, floor, cap, clamp_tol, stab_tol,
    lower, diag, upper, rhs, w, cp, dp, mob, pnu, counters,
):  # pragma: no cover - compiled
    m = rho.shape[0] - 1
    n = m - 1
    h2 = h * h
    for i in range(m + 1):
        mob[i] = _mobility(rho[i], nu, floor)
        pnu[i] = mob[i] * rho[i]

    for j in range(n):
        i = j + 1
        lower[j] = mob[i - 1]
        diag[j] = -2.0 * (mob[i] + ratio)
        upper[j] = mob[i + 1]
        rhs[j] = -(2.0 / nu) * (pnu[i + 1] - 2.0 * pnu[i] + pnu[i - 1]) - 2.0 * h2 * rho[i] ** mu

    if _thomas_kernel(lower, diag, upper, rhs, w, cp, dp) != 0:
        return _SINGULAR

    out[0] = 0.0
    out[m] = 0.0
    for j in range(n):
        value = rho[j + 1] + w[j]
        if not math.isfinite(value) or value > cap:
            return _BLOWUP
        if value < 0.0:
            if value < -stab_tol:
                return _UNSTABLE
            if value < -clamp_tol:
                counters[2] += 1
            value = 0.0
        out[j + 1] = value
    return _RUNNING


@njit(cache=True)
def _advance(
    rho, out, steps, h, ratio, mu, nu, floor, cap, clamp_tol, stab_tol,
    n_floor, n_ceil, window, ratio_floor, stride, populations, ring, counters, last,
    lower, diag, upper, rhs, w, cp, dp, mob, pnu,
):  # pragma: no cover - compiled
    """
    Advance up to `steps` steps, checking the fate rules after each one.

    counters holds [increasing run, decreasing run, clamps, steps taken],
    last[0] the previous N and last[1] the reaction/outflow ratio at the
    previous window boundary (inf before the first); all carry across calls.
    Returns the number of steps completed and a status code.

    The outflow (rho_1^nu + rho_{m-1}^nu) / (nu h) is the exact boundary loss
    of the semi-discrete scheme, so dN/dT = reaction - outflow and a ratio
    below one means N is falling.
    """
    m = rho.shape[0] - 1
    ring_len = ring.shape[0]
    for s in range(steps):
        code = _step_kernel(
            rho, out, h, ratio, mu, nu, floor, cap, clamp_tol, stab_tol,
            lower, diag, upper, rhs, w, cp, dp, mob, pnu, counters,
        )
        if code != _RUNNING:
            return s, code
        for i in range(m + 1):
            rho[i] = out[i]

        total = 0.0
        for i in range(1, m):
            total += rho[i]
        total *= h

        counters[3] += 1
        j = counters[3]
        ring[j % ring_len] = total
        if j % stride == 0:
            populations[j // stride] = total

        if total > last[0]:
            counters[0] += 1
            counters[1] = 0
        elif total < last[0]:
            counters[1] += 1
            counters[0] = 0
        else:
            counters[0] = 0
            counters[1] = 0
        last[0] = total

        if total < n_floor:
            return s + 1, _FLOOR
        if total > n_ceil and counters[0] >= window:
            return s + 1, _CEILING
        if ratio_floor > 0.0 and j % window == 0:
            reaction = 0.0
            for i in range(1, m):
                reaction += rho[i] ** mu
            reaction *= h
            outflow = (rho[1] ** nu + rho[m - 1] ** nu) / (nu * h)
            current = reaction / outflow if outflow > 0.0 else np.inf
            falling = math.isfinite(last[1]) and current < last[1]
            last[1] = current
            if counters[1] >= window and falling and current < ratio_floor:
                return s + 1, _DIFFUSION
    return steps, _RUNNING
# fmt: on


def _workspace(m: int) -> Tuple[np.ndarray, ...]:
    """Scratch arrays for one grid: seven of size m-1, two of size m+1."""
    n = m - 1
    return tuple(np.zeros(n) for _ in range(7)) + (np.zeros(m + 1), np.zeros(m + 1))


# ---------------------------------------------------------------------------
# Grid and state
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Grid:
    """
    Uniform space-time mesh on [-L/2, L/2] x [0, t_max].

    Attributes:
        m: Number of node intervals (m + 1 nodes)
        L: Domain length
        k: Time step
        t_max: Integration horizon
    """

    m: int
    L: float
    k: float
    t_max: float

    def __post_init__(self) -> None:
        valid, message = validate_grid(self.m, self.k, self.t_max, MIN_GRID_INTERVALS)
        if not valid:
            raise ConfigurationError(message)
        if not is_positive(self.L):
            raise ConfigurationError(f"domain length must be positive, got {self.L!r}")

    @property
    def h(self) -> float:
        return self.L / self.m

    @property
    def mesh_ratio(self) -> float:
        """h^2 / k, the diagonal shift of the step matrix."""
        return self.h * self.h / self.k

    @property
    def n_steps(self) -> int:
        """Steps needed to reach t_max."""
        return int(math.ceil(self.t_max / self.k - 1e-9))

    def nodes(self) -> np.ndarray:
        return np.linspace(-0.5 * self.L, 0.5 * self.L, self.m + 1)

    def step_for_time(self, time: float) -> int:
        """Index of the first step whose time is at least `time`."""
        return max(0, int(math.ceil(time / self.k - 1e-9)))


@dataclass(frozen=True)
class GridSpec:
    """
    Grid resolution independent of the domain length.

    For mu = nu the domain length sqrt(Q) changes with Q, so scans carry a
    GridSpec and build a Grid per run.

    Attributes:
        m: Number of node intervals
        k_over_h2: Time step as a multiple of h^2, used when k is None
        t_max: Integration horizon
        k: Fixed time step overriding k_over_h2
    """

    m: int = 200
    k_over_h2: float = 0.25
    t_max: float = 50.0
    k: Optional[float] = None

    def __post_init__(self) -> None:
        if isinstance(self.m, bool) or not isinstance(self.m, int) or self.m < MIN_GRID_INTERVALS:
            raise ConfigurationError(
                f"grid interval count must be an integer >= {MIN_GRID_INTERVALS}, got {self.m!r}"
            )
        if not is_positive(self.k_over_h2) or not is_positive(self.t_max):
            raise ConfigurationError("k_over_h2 and t_max must be positive")
        if self.k is not None and not is_positive(self.k):
            raise ConfigurationError(f"time step must be positive, got {self.k!r}")

    @classmethod
    def from_config(cls, config: Optional[ExperimentConfig] = None, **overrides: Any) -> "GridSpec":
        """
        Build from the solver defaults, applying non-None overrides.

        Args:
            config: Experiment configuration (default: global instance)
            **overrides: m, k_over_h2, t_max or k

        Returns:
            GridSpec instance
        """
        defaults = (config or get_experiment_config()).solver
        values: Dict[str, Any] = {
            "m": defaults.grid_intervals,
            "k_over_h2": defaults.k_over_h2,
            "t_max": defaults.t_max,
            "k": None,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def grid_for(self, length: float) -> Grid:
        h = length / self.m
        k = self.k if self.k is not None else self.k_over_h2 * h * h
        return Grid(m=self.m, L=length, k=k, t_max=self.t_max)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


GridLike = Union[Grid, GridSpec]


@dataclass(frozen=True, eq=False)
class StateVector:
    """
    Nodal densities at one time level.

    Attributes:
        rho: m + 1 nonnegative densities, zero at both ends
        time: Current time T
        blowup: Set when the step that produced this state hit the blow-up guard
    """

    rho: np.ndarray
    time: float = 0.0
    blowup: bool = False


@dataclass(frozen=True)
class FatePolicy:
    """
    Fate-classification thresholds and numerical guards.

    Attributes:
        floor_frac: Extinction when N < floor_frac * N(0)
        ceil_frac: Growth when N > ceil_frac * N(0) and N rose over the window
        window: Trailing window length in steps
        blowup_cap: Any node above this (or non-finite) counts as blow-up
        reaction_ratio_floor: Extinction when N fell over the window and the
            reaction integral, below this fraction of the boundary outflow,
            is still falling; checked every window steps, 0 disables the rule
        rate_interval: Time between samples of the separable rate (mu = nu)
        rate_checks: Consecutive rates that must agree before the rule fires
        rate_tolerance: Relative agreement between consecutive rates; 0
            disables the rule
        resolve_by_trend: Let scans read an Inconclusive run by its trend
        clamp_tolerance: Negative values below this are counted when clamped
        stability_tolerance: Negative values below minus this abort the run
        density_floor: Density floor inside rho^(nu-1) for nu < 1
        trajectory_stride: Record N every this many steps, 0 for automatic
        trajectory_samples: Bound on recorded samples for the automatic stride
    """

    floor_frac: float = 1e-3
    ceil_frac: float = 100.0
    window: int = 50
    blowup_cap: float = 1e12
    reaction_ratio_floor: float = 0.05
    rate_interval: float = 0.5
    rate_checks: int = 3
    rate_tolerance: float = 0.02
    resolve_by_trend: bool = True
    clamp_tolerance: float = 1e-12
    stability_tolerance: float = 1e-6
    density_floor: float = 1e-30
    trajectory_stride: int = 0
    trajectory_samples: int = 5000

    def __post_init__(self) -> None:
        if not (0.0 < self.floor_frac < 1.0 < self.ceil_frac):
            raise ConfigurationError(
                f"need 0 < floor_frac < 1 < ceil_frac, got {self.floor_frac}, {self.ceil_frac}"
            )
        if self.window < 1 or self.trajectory_samples < 1:
            raise ConfigurationError("window and trajectory_samples must be at least 1")
        if self.trajectory_stride < 0:
            raise ConfigurationError("trajectory_stride must be nonnegative")
        if self.reaction_ratio_floor < 0.0 or self.rate_tolerance < 0.0:
            raise ConfigurationError("reaction_ratio_floor and rate_tolerance must be nonnegative")
        if self.rate_interval <= 0.0 or self.rate_checks < 2:
            raise ConfigurationError("need rate_interval > 0 and rate_checks >= 2")
        if not self.clamp_tolerance <= self.stability_tolerance:
            raise ConfigurationError("clamp_tolerance must not exceed stability_tolerance")

    @classmethod
    def from_config(
        cls, config: Optional[ExperimentConfig] = None, **overrides: Any
    ) -> "FatePolicy":
        """
        Build from the fate and solver sections of the experiment configuration.

        Args:
            config: Experiment configuration (default: global instance)
            **overrides: Any field, None values are ignored

        Returns:
            FatePolicy instance
        """
        config = config or get_experiment_config()
        values: Dict[str, Any] = {
            "floor_frac": config.fate.floor_frac,
            "ceil_frac": config.fate.ceil_frac,
            "window": config.fate.window,
            "blowup_cap": config.fate.blowup_cap,
            "reaction_ratio_floor": config.fate.reaction_ratio_floor,
            "rate_interval": config.fate.rate_interval,
            "rate_checks": config.fate.rate_checks,
            "rate_tolerance": config.fate.rate_tolerance,
            "resolve_by_trend": config.fate.resolve_by_trend,
            "clamp_tolerance": config.solver.clamp_tolerance,
            "stability_tolerance": config.solver.stability_tolerance,
            "density_floor": config.solver.density_floor,
            "trajectory_stride": config.solver.trajectory_stride,
            "trajectory_samples": config.solver.trajectory_samples,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class Snapshot(NamedTuple):
    """Density profile captured during a run."""

    requested: float
    time: float
    rho: np.ndarray


@dataclass(eq=False)
class FateReport:
    """
    Result of one fate run.

    Attributes:
        outcome: Extinction, Growth or Inconclusive
        stop_reason: Rule that stopped the run
        stop_time: Time at termination
        times: Recorded sample times, strictly increasing
        populations: N(T) at the recorded times
        trend: Direction of N over the trailing window at the stop time
        initial_population: N(0)
        final_state: Last finite state
        snapshots: Captured profiles in requested order
        clamp_count: Negative values clamped beyond clamp_tolerance
        steps: Steps completed
    """

    outcome: Outcome
    stop_reason: StopReason
    stop_time: float
    times: np.ndarray
    populations: np.ndarray
    trend: Trend
    initial_population: float
    final_state: StateVector
    snapshots: List[Snapshot] = field(default_factory=list)
    clamp_count: int = 0
    steps: int = 0

    @property
    def trajectory(self) -> np.ndarray:
        """(T, N) samples as an array of shape (n, 2)."""
        return np.column_stack((self.times, self.populations))

    def resolved_outcome(self, resolve_by_trend: bool = True) -> Outcome:
        """
        Binary reading of the run used by the threshold scans.

        Inconclusive runs count as Growth when N was increasing at the horizon
        and as Extinction otherwise; with resolve_by_trend off they stay
        Inconclusive.
        """
        if self.outcome is not Outcome.INCONCLUSIVE or not resolve_by_trend:
            return self.outcome
        return Outcome.GROWTH if self.trend is Trend.INCREASING else Outcome.EXTINCTION


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def thomas_solve(
    lower: np.ndarray, diag: np.ndarray, upper: np.ndarray, rhs: np.ndarray
) -> np.ndarray:
    """
    Solve a tridiagonal system in linear time.

    Args:
        lower: Sub-diagonal, length n - 1
        diag: Main diagonal, length n
        upper: Super-diagonal, length n - 1
        rhs: Right-hand side, length n

    Returns:
        Solution vector of length n

    Raises:
        DomainError: If the array lengths are inconsistent
        SingularSystemError: If elimination meets a zero pivot

    Example:
        >>> thomas_solve(np.zeros(2), np.ones(3), np.zeros(2), np.array([1.0, 2.0, 3.0]))
        array([1., 2., 3.])
    """
    diag = np.ascontiguousarray(diag, dtype=float)
    rhs = np.ascontiguousarray(rhs, dtype=float)
    n = diag.shape[0]
    off_diagonal = (max(n - 1, 0),)
    if rhs.shape != (n,) or np.shape(lower) != off_diagonal or np.shape(upper) != off_diagonal:
        raise DomainError(
            f"inconsistent tridiagonal sizes: lower {np.shape(lower)}, diag {diag.shape}, "
            f"upper {np.shape(upper)}, rhs {rhs.shape}"
        )
    if n == 0:
        return np.zeros(0)

    sub = np.zeros(n)
    sub[1:] = lower
    sup = np.zeros(n)
    sup[:-1] = upper
    x = np.empty(n)
    if _thomas_kernel(sub, diag, sup, rhs, x, np.empty(n), np.empty(n)) != 0:
        raise SingularSystemError("zero pivot in tridiagonal elimination")
    return x


def _checked_density(rho: np.ndarray, grid: Grid) -> np.ndarray:
    rho = np.array(rho, dtype=float)
    if rho.shape != (grid.m + 1,):
        raise DomainError(f"state has {rho.shape} nodes, grid needs {grid.m + 1}")
    if rho[0] != 0.0 or rho[-1] != 0.0:
        raise DomainError("state violates the zero boundary condition")
    if not np.all(np.isfinite(rho)) or np.any(rho < 0.0):
        raise DomainError("state must be finite and nonnegative")
    return rho


def step(
    state: StateVector, grid: Grid, exps: ModelExponents, policy: Optional[FatePolicy] = None
) -> StateVector:
    """
    Advance one time step.

    Args:
        state: Current state
        grid: Grid the state lives on
        exps: Model exponents
        policy: Numerical guards (default: from configuration)

    Returns:
        State at T + k. If the blow-up guard fires, the input density is
        returned unchanged with blowup=True.

    Raises:
        DomainError: If the state violates its invariants
        StabilityError: If a node drops below minus the stability tolerance
        SingularSystemError: If the step matrix is singular
    """
    policy = policy or FatePolicy.from_config()
    rho = _checked_density(state.rho, grid)
    out = np.zeros_like(rho)
    counters = np.zeros(4, dtype=np.int64)

    code = _step_kernel(
        rho, out, grid.h, grid.mesh_ratio, float(exps.mu), float(exps.nu),
        policy.density_floor, policy.blowup_cap, policy.clamp_tolerance,
        policy.stability_tolerance, *_workspace(grid.m), counters,
    )
    if code == _UNSTABLE:
        raise StabilityError(
            f"density fell below -{policy.stability_tolerance} at T={state.time + grid.k:g}"
        )
    if code == _SINGULAR:
        raise SingularSystemError(f"singular step matrix at T={state.time:g}")
    if code == _BLOWUP:
        logger.debug("Blow-up guard triggered at T=%g", state.time + grid.k)
        return StateVector(rho=rho, time=state.time, blowup=True)
    if counters[2]:
        logger.debug("Clamped %d negative values at T=%g", counters[2], state.time + grid.k)
    return StateVector(rho=out, time=state.time + grid.k)


def total_population(state: StateVector, grid: Grid) -> float:
    """
    Trapezoidal total population h (rho_0/2 + sum of interior + rho_m/2).

    Args:
        state: State on the grid
        grid: Grid

    Returns:
        N(T)
    """
    rho = np.asarray(state.rho, dtype=float)
    return float(grid.h * (rho[1:-1].sum() + 0.5 * (rho[0] + rho[-1])))


def _resolve_grid(problem: NondimProblem, grid: GridLike) -> Grid:
    if isinstance(grid, GridSpec):
        return grid.grid_for(problem.L)
    if abs(grid.L - problem.L) > 1e-12 * max(1.0, problem.L):
        raise ConfigurationError(f"grid length {grid.L} does not match domain length {problem.L}")
    return grid


def _trend(last: float, reference: float) -> Trend:
    if abs(last - reference) <= _TREND_TOLERANCE * max(abs(last), abs(reference)):
        return Trend.FLAT
    return Trend.INCREASING if last > reference else Trend.DECREASING


def _auto_stride(n_steps: int, samples: int) -> int:
    return max(1, -(-n_steps // samples))


def _separable_coordinate(population: float, mu: float) -> float:
    """
    ln N for mu = 1, N^(1-mu) / (1-mu) otherwise.

    For mu = nu every separable solution theta(T) f(X) satisfies
    theta' = lambda theta^mu, so this coordinate grows linearly in T with the
    sign of lambda.
    """
    if mu == 1.0:
        return math.log(population)
    return population ** (1.0 - mu) / (1.0 - mu)


def _settled_rate(samples: List[float], interval: float, checks: int, tolerance: float) -> int:
    """
    Sign of the separable rate once it has settled, else 0.

    The last `checks` slopes of the sampled coordinate must share a sign and
    each must agree with the one before it to within `tolerance`.
    """
    if len(samples) < checks + 1:
        return 0
    slopes = np.diff(samples[-(checks + 1) :]) / interval
    if np.all(slopes > 0.0):
        sign = 1
    elif np.all(slopes < 0.0):
        sign = -1
    else:
        return 0
    if np.all(np.abs(np.diff(slopes)) <= tolerance * np.abs(slopes[1:])):
        return sign
    return 0


def run(
    problem: NondimProblem,
    grid: GridLike,
    policy: Optional[FatePolicy] = None,
    snapshot_times: Sequence[float] = (),
    initial: Optional[np.ndarray] = None,
) -> FateReport:
    """
    Integrate a problem and classify its fate.

    Args:
        problem: Nondimensional problem
        grid: Grid matching the problem domain, or a GridSpec to build one
        policy: Fate thresholds and numerical guards (default: from configuration)
        snapshot_times: Times at which to capture the density; each is taken at
            the first step at or after the requested time
        initial: Optional nodal initial density replacing the sampled profile

    Returns:
        FateReport

    Raises:
        ConfigurationError: If the grid is invalid or does not match the problem
        StabilityError: If the run turns unstable
        SingularSystemError: If a step matrix is singular
    """
    policy = policy or FatePolicy.from_config()
    grid = _resolve_grid(problem, grid)
    exps = problem.exps

    rho = _checked_density(sample_profile(problem, grid) if initial is None else initial, grid)
    n0 = total_population(StateVector(rho), grid)
    logger.debug(
        "Run: mu=%g nu=%g Q=%.10g %s alpha=%g, m=%d k=%.3g steps=%d, N0=%.10g",
        exps.mu, exps.nu, problem.q, problem.profile.label, problem.profile.alpha,
        grid.m, grid.k, grid.n_steps, n0,
    )

    if n0 <= 0.0:
        return FateReport(
            outcome=Outcome.EXTINCTION,
            stop_reason=StopReason.POPULATION_FLOOR,
            stop_time=0.0,
            times=np.zeros(1),
            populations=np.zeros(1),
            trend=Trend.FLAT,
            initial_population=0.0,
            final_state=StateVector(rho, 0.0),
            snapshots=[Snapshot(t, 0.0, rho.copy()) for t in snapshot_times if t <= 0.0],
        )

    stride = policy.trajectory_stride or _auto_stride(grid.n_steps, policy.trajectory_samples)
    window = policy.window
    total_steps = grid.n_steps
    populations = np.empty(total_steps // stride + 1)
    populations[0] = n0
    ring = np.empty(window + 1)
    ring[0] = n0
    counters = np.zeros(4, dtype=np.int64)
    last = np.array([n0, np.inf])
    out = np.zeros_like(rho)
    work = _workspace(grid.m)

    # The separable rate only exists when mu = nu
    rate_steps = 0
    if exps.mu == exps.nu and policy.rate_tolerance > 0.0:
        rate_steps = max(1, grid.step_for_time(policy.rate_interval))
    samples = [_separable_coordinate(n0, exps.mu)]

    def advance(steps: int) -> Tuple[int, int]:
        return _advance(
            rho, out, steps, grid.h, grid.mesh_ratio, float(exps.mu), float(exps.nu),
            policy.density_floor, policy.blowup_cap, policy.clamp_tolerance,
            policy.stability_tolerance, policy.floor_frac * n0, policy.ceil_frac * n0,
            window, policy.reaction_ratio_floor, stride, populations, ring, counters, last,
            *work,
        )

    done = 0
    code = _RUNNING

    def advance_to(target: int) -> None:
        nonlocal done, code
        while code == _RUNNING and done < target:
            stop = target
            if rate_steps:
                stop = min(target, (done // rate_steps + 1) * rate_steps)
            taken, code = advance(stop - done)
            done += taken
            if code == _RUNNING and rate_steps and done % rate_steps == 0:
                samples.append(_separable_coordinate(float(last[0]), exps.mu))
                sign = _settled_rate(
                    samples, rate_steps * grid.k, policy.rate_checks, policy.rate_tolerance
                )
                if sign:
                    code = _RATE_GROWTH if sign > 0 else _RATE_DECAY

    requested = sorted(set(float(t) for t in snapshot_times))
    captured: Dict[float, Snapshot] = {}
    for time in requested:
        target = grid.step_for_time(time)
        if target > total_steps:
            logger.warning("Snapshot T=%g lies beyond the horizon %g; skipped", time, grid.t_max)
            continue
        advance_to(target)
        if code != _RUNNING:
            break
        captured[time] = Snapshot(time, done * grid.k, rho.copy())

    advance_to(total_steps)

    if code == _UNSTABLE:
        raise StabilityError(
            f"density fell below -{policy.stability_tolerance} at T={(done + 1) * grid.k:g}"
        )
    if code == _SINGULAR:
        raise SingularSystemError(f"singular step matrix at T={done * grid.k:g}")

    for time in requested:
        if time not in captured and grid.step_for_time(time) <= total_steps:
            logger.warning("Run stopped before snapshot T=%g", time)

    outcome, reason = _STOP_TABLE[code]
    stop_step = done + 1 if code == _BLOWUP else done

    recorded = done // stride + 1
    steps_index = np.arange(recorded) * stride
    trajectory = populations[:recorded].copy()
    if done % stride:
        steps_index = np.append(steps_index, done)
        trajectory = np.append(trajectory, last[0])

    ring_len = window + 1
    reference = ring[(done - window) % ring_len] if done >= window else n0
    trend = _trend(float(last[0]), float(reference))

    report = FateReport(
        outcome=outcome,
        stop_reason=reason,
        stop_time=stop_step * grid.k,
        times=steps_index * grid.k,
        populations=trajectory,
        trend=trend,
        initial_population=n0,
        final_state=StateVector(rho.copy(), done * grid.k),
        snapshots=[captured[t] for t in requested if t in captured],
        clamp_count=int(counters[2]),
        steps=done,
    )
    if report.clamp_count:
        logger.warning("%d negative values clamped to zero", report.clamp_count)
    logger.debug(
        "Fate %s (%s) at T=%.6g after %d steps, trend %s",
        outcome.value, reason.value, report.stop_time, done, trend.value,
    )
    return report


def classify_fate(
    problem: NondimProblem, grid: GridLike, policy: Optional[FatePolicy] = None
) -> FateReport:
    """
    Classify a problem as Extinction, Growth or Inconclusive.

    Rules, in the order they are checked: blow-up guard, population floor,
    population ceiling, diffusion-dominated decay (every window steps), then, for
    mu = nu, a settled separable rate at every rate_interval. Inconclusive
    is left only for runs that reach the horizon without any rule firing.

    Args:
        problem: Nondimensional problem, mu >= nu
        grid: Grid matching the problem domain, or a GridSpec
        policy: Fate thresholds (default: from configuration)

    Returns:
        FateReport
    """
    return run(problem, grid, policy)


def steady_profile(mu: float, C: float, X: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    Nonnegative steady solution C cos(sqrt(mu) X)^(1/mu) for mu = nu.

    Args:
        mu: Growth exponent (equal to nu)
        C: Amplitude
        X: Position or array of positions with |X| <= pi / (2 sqrt(mu))

    Returns:
        Steady density

    Raises:
        DomainError: If mu or C is not positive or X lies beyond the cosine zero
    """
    if not (is_positive(mu) and is_positive(C)):
        raise DomainError(f"mu and C must be positive, got mu={mu}, C={C}")
    X_arr = np.asarray(X, dtype=float)
    edge = math.pi / (2.0 * math.sqrt(mu))
    if np.any(np.abs(X_arr) > edge * (1.0 + 1e-12)):
        raise DomainError(f"position beyond the steady support [-{edge}, {edge}]")
    values = C * np.maximum(np.cos(math.sqrt(mu) * X_arr), 0.0) ** (1.0 / mu)
    if np.ndim(X) == 0:
        return float(values)
    return values
