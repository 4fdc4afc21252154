"""
Threshold estimation for patchsurvival.

Critical values are located by descending scans: start from a value known to
give growth and step down until the first extinction. The last growth value
and the first extinction value bracket the threshold.

- Q_c(mu, nu, alpha): scan over Q, estimate is the bracket midpoint.
- alpha_min(mu, nu, Q): scan over alpha, estimate is the last surviving alpha.

Both scans assume survival is monotone in the scanned variable; every trace is
checked and a violation raises MonotonicityError. A coarse multi-level pilot
scan can locate the bracket first, and an optional bisection pass refines it.
"""

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from scipy.optimize import bisect
from tqdm import tqdm

from patchsurvival.config import ExperimentConfig, get_experiment_config, get_runtime_config
from patchsurvival.constants import (
    STATUS_ALREADY_SURVIVES,
    STATUS_CAPPED,
    STATUS_OK,
    Family,
    Outcome,
    SweepAxis,
    ThresholdTask,
)
from patchsurvival.dist import InitialProfile
from patchsurvival.exceptions import (
    BadStartError,
    ConfigurationError,
    MonotonicityError,
    PatchSurvivalError,
    ScanExhaustedError,
)
from patchsurvival.scaling import ModelExponents, NondimProblem, problem_from_q
from patchsurvival.solver import FatePolicy, GridSpec, run
from utils.validation_utils import validate_increasing, validate_scan

logger = logging.getLogger(__name__)

# Digits kept when generating scan values, so start - r*step has no float noise
_SCAN_DIGITS = 12


@dataclass(frozen=True)
class ScanConfig:
    """
    Descending scan settings.

    Attributes:
        start: First scanned value, must give growth
        step: Decrement per iteration
        max_iters: Iteration budget, large enough to reach zero
        refine: Bisect inside the bracket after the scan
        refine_tol: Bracket width at which refinement stops
    """

    start: float
    step: float
    max_iters: int
    refine: bool = False
    refine_tol: float = 1e-4

    def __post_init__(self) -> None:
        valid, message = validate_scan(self.start, self.step, self.max_iters)
        if not valid:
            raise ConfigurationError(message)
        if self.refine and not self.refine_tol > 0.0:
            raise ConfigurationError(f"refine_tol must be positive, got {self.refine_tol}")

    @classmethod
    def create(
        cls,
        start: float,
        step: float,
        max_iters: Optional[int] = None,
        refine: bool = False,
        refine_tol: Optional[float] = None,
    ) -> "ScanConfig":
        """
        Build a scan, sizing max_iters to reach zero when not given.

        Args:
            start: First scanned value
            step: Decrement
            max_iters: Iteration budget (default: enough to reach zero)
            refine: Enable bisection refinement
            refine_tol: Refinement width (default: experiment config)

        Returns:
            ScanConfig instance
        """
        if max_iters is None and start > 0.0 and step > 0.0:
            max_iters = int(math.ceil(start / step)) + 1
        if refine_tol is None:
            refine_tol = get_experiment_config().scan.refine_tol
        return cls(
            start=float(start),
            step=float(step),
            max_iters=max_iters if max_iters is not None else 0,
            refine=refine,
            refine_tol=float(refine_tol),
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class ThresholdEstimate:
    """
    Bracket around a critical value.

    Attributes:
        parameter: "Q" or "alpha"
        lower: Largest scanned value with extinction
        upper: Smallest scanned value with growth
        estimate: Midpoint for Q_c, upper for alpha_min
        evaluations: Number of fate runs
        trace: (value, outcome) of every run, in evaluation order
        already_survives: alpha scan only; the homogeneous profile survives
        capped: alpha scan only; the start was capped
        refined: Bisection refinement was applied
        pilot_estimate: Estimate of the coarse pre-scan, if one ran
    """

    parameter: str
    lower: float
    upper: float
    estimate: float
    evaluations: int
    trace: Tuple[Tuple[float, Outcome], ...]
    already_survives: bool = False
    capped: bool = False
    refined: bool = False
    pilot_estimate: Optional[float] = None

    @property
    def per_point_fates(self) -> Tuple[Tuple[float, Outcome], ...]:
        return self.trace

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def status(self) -> str:
        if self.already_survives:
            return STATUS_ALREADY_SURVIVES
        if self.capped:
            return STATUS_CAPPED
        return STATUS_OK


class _Evaluator:
    """Memoizing fate oracle: value -> survived, recording every evaluation."""

    def __init__(
        self,
        parameter: str,
        make_problem: Callable[[float], NondimProblem],
        grid: GridSpec,
        policy: FatePolicy,
    ) -> None:
        self.parameter = parameter
        self.make_problem = make_problem
        self.grid = grid
        self.policy = policy
        self.cache: Dict[float, bool] = {}
        self.trace: List[Tuple[float, Outcome]] = []

    def __call__(self, value: float) -> bool:
        value = round(float(value), _SCAN_DIGITS)
        if value in self.cache:
            return self.cache[value]

        report = run(self.make_problem(value), self.grid, self.policy)
        outcome = report.resolved_outcome(self.policy.resolve_by_trend)
        if report.outcome is Outcome.INCONCLUSIVE:
            logger.warning(
                "Inconclusive run at %s=%.10g (trend %s), read as %s",
                self.parameter, value, report.trend.value, outcome.value,
            )
        survived = outcome is Outcome.GROWTH
        logger.debug(
            "run %s=%.10g -> %s (%s)", self.parameter, value, outcome.value,
            report.stop_reason.value,
        )
        self.cache[value] = survived
        self.trace.append((value, outcome))
        return survived

    @property
    def evaluations(self) -> int:
        return len(self.trace)

    def bracket_within(self, low: float, high: float) -> Tuple[float, float]:
        """Tightest (extinct, growth) pair of cached runs inside [low, high]."""
        extinct = [v for v, ok in self.cache.items() if not ok and low <= v <= high]
        growth = [v for v, ok in self.cache.items() if ok and low <= v <= high]
        return max(extinct, default=low), min(growth, default=high)

    def check_monotone(self) -> None:
        """
        Raise MonotonicityError when an extinction lies above a growth value.
        """
        extinct = [v for v, ok in self.cache.items() if not ok]
        growth = [v for v, ok in self.cache.items() if ok]
        if extinct and growth and max(extinct) > min(growth):
            raise MonotonicityError(
                f"non-monotone survival in {self.parameter}: extinction at "
                f"{max(extinct):.10g} above growth at {min(growth):.10g}",
                self.trace,
            )


def _descend(
    evaluator: _Evaluator, start: float, step: float, max_iters: int, floor: float = 0.0
) -> Tuple[float, float]:
    """
    Walk start, start - step, ... until the first extinction.

    Returns (first extinct value, last growth value). Reaching `floor` without
    an extinction returns (floor, last growth value).

    Raises:
        BadStartError: If start does not give growth
        ScanExhaustedError: If max_iters runs out first
    """
    if not evaluator(start):
        raise BadStartError(
            f"scan start {evaluator.parameter}={start:g} does not lead to growth; raise the start",
            evaluator.trace,
        )
    previous = start
    for r in range(1, max_iters + 1):
        value = round(start - r * step, _SCAN_DIGITS)
        if value <= floor:
            return floor, previous
        if not evaluator(value):
            return value, previous
        previous = value
    raise ScanExhaustedError(
        f"no extinction after {max_iters} steps of {step:g} from {evaluator.parameter}={start:g}",
        evaluator.trace,
    )


def _refine(evaluator: _Evaluator, lower: float, upper: float, tol: float) -> Tuple[float, float]:
    """Bisect the bracket with the cached fate oracle until its width is below tol."""
    if upper - lower <= tol:
        return lower, upper

    def sign(value: float) -> float:
        return 1.0 if evaluator(value) else -1.0

    # Endpoint fates are cached, so bisect only pays for interior runs
    bisect(sign, lower, upper, xtol=tol)
    return evaluator.bracket_within(lower, upper)


def _pilot(
    evaluator: _Evaluator,
    start: float,
    step: float,
    divisions: int,
    step_fraction: float,
    midpoint: bool,
) -> Tuple[float, float, float, float]:
    """
    Multi-level coarse descending scan.

    Each level walks down from the last growth value in steps of one
    `divisions`-th of the current bracket, until the level step is within
    `divisions` fine steps. The fine step is min(step, step_fraction * pilot
    estimate).

    Returns:
        (lower, upper, pilot estimate, fine step)
    """
    lower, upper = 0.0, start
    level_step = start / divisions
    while True:
        lower, upper = _descend(
            evaluator, upper, level_step, divisions + 1, floor=max(lower, 0.0)
        )
        estimate = 0.5 * (lower + upper) if midpoint else upper
        fine_step = min(step, step_fraction * estimate) if estimate > 0.0 else step
        logger.debug(
            "pilot level step %.6g: bracket [%.10g, %.10g], fine step %.6g",
            level_step, lower, upper, fine_step,
        )
        if level_step <= divisions * fine_step or upper - lower <= fine_step:
            return lower, upper, estimate, fine_step
        level_step = (upper - lower) / divisions


def default_q_start(exps: ModelExponents, config: Optional[ExperimentConfig] = None) -> float:
    """
    Default Q scan start: q_start_factor * pi^2 / mu, at least q_start_min.

    Args:
        exps: Model exponents
        config: Experiment configuration (default: global instance)

    Returns:
        Q^(0)
    """
    scan = (config or get_experiment_config()).scan
    return max(scan.q_start_factor * math.pi**2 / exps.mu, scan.q_start_min)


def _finish(
    evaluator: _Evaluator,
    lower: float,
    upper: float,
    scan: ScanConfig,
    midpoint: bool,
    pilot_estimate: Optional[float] = None,
    capped: bool = False,
) -> ThresholdEstimate:
    refined = False
    if scan.refine:
        lower, upper = _refine(evaluator, lower, upper, scan.refine_tol)
        refined = True
    evaluator.check_monotone()
    estimate = 0.5 * (lower + upper) if midpoint else upper
    return ThresholdEstimate(
        parameter=evaluator.parameter,
        lower=lower,
        upper=upper,
        estimate=estimate,
        evaluations=evaluator.evaluations,
        trace=tuple(evaluator.trace),
        capped=capped,
        refined=refined,
        pilot_estimate=pilot_estimate,
    )


def _qc_evaluator(
    exps: ModelExponents,
    family: Union[Family, str],
    alpha: float,
    grid: Optional[GridSpec],
    policy: Optional[FatePolicy],
) -> _Evaluator:
    exps.require_conditional()
    profile = InitialProfile.create(family, alpha)
    return _Evaluator(
        "Q",
        lambda q: problem_from_q(exps, q, profile),
        grid or GridSpec.from_config(),
        policy or FatePolicy.from_config(),
    )


def _alpha_evaluator(
    exps: ModelExponents,
    family: Union[Family, str],
    q: float,
    grid: Optional[GridSpec],
    policy: Optional[FatePolicy],
) -> _Evaluator:
    exps.require_conditional(strict=True)
    family = Family(family)
    if family is Family.HOMOGENEOUS:
        raise ConfigurationError("alpha scans need the f1 or f2 family")
    return _Evaluator(
        "alpha",
        lambda alpha: problem_from_q(exps, q, InitialProfile.create(family, alpha)),
        grid or GridSpec.from_config(),
        policy or FatePolicy.from_config(),
    )


def _default_scan(parameter: str, exps: ModelExponents) -> ScanConfig:
    settings = get_experiment_config().scan
    if parameter == "Q":
        return ScanConfig.create(start=default_q_start(exps), step=settings.q_step)
    return ScanConfig.create(start=settings.alpha_start, step=settings.alpha_step)


def _cap_alpha_scan(scan: ScanConfig) -> Tuple[ScanConfig, bool]:
    cap = get_experiment_config().scan.alpha_cap
    if scan.start <= cap:
        return scan, False
    logger.warning("alpha scan start %g capped at %g", scan.start, cap)
    return ScanConfig.create(cap, scan.step, refine=scan.refine, refine_tol=scan.refine_tol), True


def _homogeneous_survives(evaluator: _Evaluator, q: float) -> Optional[ThresholdEstimate]:
    if not evaluator(0.0):
        return None
    logger.info("Homogeneous distribution already survives at Q=%g", q)
    return ThresholdEstimate(
        parameter=evaluator.parameter,
        lower=0.0,
        upper=0.0,
        estimate=0.0,
        evaluations=evaluator.evaluations,
        trace=tuple(evaluator.trace),
        already_survives=True,
    )


def estimate_qc(
    exps: ModelExponents,
    family: Union[Family, str],
    alpha: float,
    scan: Optional[ScanConfig] = None,
    grid: Optional[GridSpec] = None,
    policy: Optional[FatePolicy] = None,
) -> ThresholdEstimate:
    """
    Estimate Q_c(mu, nu, alpha) by a descending Q scan.

    Args:
        exps: Model exponents, mu >= nu
        family: Initial-distribution family
        alpha: Shape parameter
        scan: Scan settings (default: Q^(0) from default_q_start, step q_step)
        grid: Grid resolution (default: solver defaults)
        policy: Fate thresholds (default: from configuration)

    Returns:
        ThresholdEstimate with estimate = (lower + upper) / 2

    Raises:
        UnsupportedRegimeError: If mu < nu
        BadStartError: If the start does not give growth
        ScanExhaustedError: If no extinction is found before Q reaches 0
        MonotonicityError: If the trace is not monotone
    """
    evaluator = _qc_evaluator(exps, family, alpha, grid, policy)
    scan = scan or _default_scan("Q", exps)
    lower, upper = _descend(evaluator, scan.start, scan.step, scan.max_iters)
    if lower <= 0.0:
        raise ScanExhaustedError(
            f"Q scan reached 0 without extinction at mu={exps.mu}, nu={exps.nu}", evaluator.trace
        )
    result = _finish(evaluator, lower, upper, scan, midpoint=True)
    logger.info(
        "Q_c(%g,%g,%s,alpha=%g) ~ %.6g in [%.6g, %.6g] after %d runs",
        exps.mu, exps.nu, Family(family).value, alpha, result.estimate,
        result.lower, result.upper, result.evaluations,
    )
    return result


def estimate_alpha_min(
    exps: ModelExponents,
    family: Union[Family, str],
    q: float,
    scan: Optional[ScanConfig] = None,
    grid: Optional[GridSpec] = None,
    policy: Optional[FatePolicy] = None,
) -> ThresholdEstimate:
    """
    Estimate alpha_min(mu, nu, Q) by a descending alpha scan.

    If the homogeneous profile (alpha = 0) already survives, the estimate is
    0 with already_survives set.

    Args:
        exps: Model exponents, mu > nu
        family: f1 or f2
        q: Survival parameter
        scan: Scan settings (default: alpha_start, alpha_step)
        grid: Grid resolution (default: solver defaults)
        policy: Fate thresholds (default: from configuration)

    Returns:
        ThresholdEstimate with estimate = upper (the last surviving alpha)

    Raises:
        UnsupportedRegimeError: If mu <= nu
        BadStartError: If the start does not give growth
        ScanExhaustedError: If max_iters runs out
        MonotonicityError: If the trace is not monotone
    """
    evaluator = _alpha_evaluator(exps, family, q, grid, policy)
    scan, capped = _cap_alpha_scan(scan or _default_scan("alpha", exps))

    early = _homogeneous_survives(evaluator, q)
    if early is not None:
        return early

    lower, upper = _descend(evaluator, scan.start, scan.step, scan.max_iters)
    result = _finish(evaluator, lower, upper, scan, midpoint=False, capped=capped)
    logger.info(
        "alpha_min(%g,%g,%s,Q=%g) ~ %.6g in [%.6g, %.6g] after %d runs",
        exps.mu, exps.nu, Family(family).value, q, result.estimate,
        result.lower, result.upper, result.evaluations,
    )
    return result


def estimate_with_pilot(
    task: Union[ThresholdTask, str],
    exps: ModelExponents,
    family: Union[Family, str],
    value: float,
    scan: Optional[ScanConfig] = None,
    grid: Optional[GridSpec] = None,
    policy: Optional[FatePolicy] = None,
) -> ThresholdEstimate:
    """
    Run a coarse pilot scan, then a fine scan inside the pilot bracket.

    The fine step is at most pilot_step_fraction of the pilot estimate.

    Args:
        task: qc or alpha-min
        exps: Model exponents
        family: Initial-distribution family
        value: alpha for qc, Q for alpha-min
        scan: Requested scan; its start and step bound the pilot and fine scans
        grid: Grid resolution
        policy: Fate thresholds

    Returns:
        ThresholdEstimate with pilot_estimate set
    """
    task = ThresholdTask(task)
    settings = get_experiment_config().scan
    capped = False
    if task is ThresholdTask.QC:
        evaluator = _qc_evaluator(exps, family, value, grid, policy)
        scan = scan or _default_scan("Q", exps)
        midpoint = True
    else:
        evaluator = _alpha_evaluator(exps, family, value, grid, policy)
        scan, capped = _cap_alpha_scan(scan or _default_scan("alpha", exps))
        midpoint = False
        early = _homogeneous_survives(evaluator, value)
        if early is not None:
            return early

    lower, upper, pilot_estimate, fine_step = _pilot(
        evaluator, scan.start, scan.step, settings.pilot_divisions,
        settings.pilot_step_fraction, midpoint,
    )
    if task is ThresholdTask.QC and lower <= 0.0:
        raise ScanExhaustedError(
            f"Q pilot reached 0 without extinction at mu={exps.mu}, nu={exps.nu}", evaluator.trace
        )

    if upper - lower > fine_step:
        iters = int(math.ceil((upper - lower) / fine_step)) + 1
        lower, upper = _descend(evaluator, upper, fine_step, iters, floor=lower)
    result = _finish(evaluator, lower, upper, scan, midpoint, pilot_estimate, capped)
    logger.info(
        "%s(%g,%g,%s,%g) ~ %.6g in [%.6g, %.6g] after %d runs (pilot %.6g)",
        task.value, exps.mu, exps.nu, Family(family).value, value, result.estimate,
        result.lower, result.upper, result.evaluations, pilot_estimate,
    )
    return result


@dataclass(frozen=True)
class FamilyGap:
    """Q_c of both families at one point."""

    f1: ThresholdEstimate
    f2: ThresholdEstimate

    @property
    def gap(self) -> float:
        """Q_c(F2) - Q_c(F1)."""
        return self.f2.estimate - self.f1.estimate


@dataclass(frozen=True)
class AlphaRatio:
    """alpha_min of both families at one point."""

    f1: ThresholdEstimate
    f2: ThresholdEstimate

    @property
    def ratio(self) -> float:
        """alpha_min(F2) / alpha_min(F1); nan when alpha_min(F1) is 0."""
        if self.f1.estimate == 0.0:
            return math.nan
        return self.f2.estimate / self.f1.estimate


def family_gap(
    exps: ModelExponents,
    alpha: float,
    scan: Optional[ScanConfig] = None,
    grid: Optional[GridSpec] = None,
    policy: Optional[FatePolicy] = None,
) -> FamilyGap:
    """
    Q_c(F2) - Q_c(F1) at one (mu, nu, alpha).

    Args:
        exps: Model exponents, mu >= nu
        alpha: Shape parameter
        scan: Scan settings shared by both families
        grid: Grid resolution
        policy: Fate thresholds

    Returns:
        FamilyGap holding both estimates
    """
    estimates = [
        estimate_with_pilot(ThresholdTask.QC, exps, family, alpha, scan, grid, policy)
        for family in (Family.SYMMETRIC_F1, Family.ASYMMETRIC_F2)
    ]
    result = FamilyGap(*estimates)
    logger.info("Q_c gap F2-F1 at (%g,%g,alpha=%g): %.6g", exps.mu, exps.nu, alpha, result.gap)
    return result


def alpha_ratio(
    exps: ModelExponents,
    q: float,
    scan: Optional[ScanConfig] = None,
    grid: Optional[GridSpec] = None,
    policy: Optional[FatePolicy] = None,
) -> AlphaRatio:
    """
    alpha_min(F2) / alpha_min(F1) at one (mu, nu, Q).

    Args:
        exps: Model exponents, mu > nu
        q: Survival parameter
        scan: Scan settings shared by both families
        grid: Grid resolution
        policy: Fate thresholds

    Returns:
        AlphaRatio holding both estimates
    """
    estimates = [
        estimate_with_pilot(ThresholdTask.ALPHA_MIN, exps, family, q, scan, grid, policy)
        for family in (Family.SYMMETRIC_F1, Family.ASYMMETRIC_F2)
    ]
    result = AlphaRatio(*estimates)
    logger.info("alpha_min ratio F2/F1 at (%g,%g,Q=%g): %.6g", exps.mu, exps.nu, q, result.ratio)
    return result


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepFixed:
    """
    Parameters held fixed along a sweep.

    Attributes:
        family: Initial-distribution family
        mu: Growth exponent (unless the sweep runs over mu)
        nu: Diffusion exponent (unless the sweep runs over nu)
        alpha: Shape parameter for qc sweeps
        q: Survival parameter for alpha-min sweeps (unless the sweep runs over Q)
    """

    family: Family = Family.SYMMETRIC_F1
    mu: Optional[float] = None
    nu: Optional[float] = None
    alpha: float = 0.0
    q: Optional[float] = None

    def at(self, axis: SweepAxis, point: float) -> "SweepFixed":
        """Bundle with the swept parameter set to `point`."""
        return replace(self, **{axis.value: float(point)})

    def to_dict(self) -> Dict[str, Any]:
        values = asdict(self)
        values["family"] = self.family.value
        return values


@dataclass(frozen=True)
class SweepRow:
    """One sweep point: its estimate or the error that stopped it, and the scan it ran."""

    axis_value: float
    estimate: Optional[ThresholdEstimate]
    status: str
    scan: Optional[ScanConfig] = None

    def to_record(self) -> Dict[str, Any]:
        if self.estimate is None:
            return {
                "axis_value": self.axis_value,
                "estimate": math.nan,
                "bracket_lo": math.nan,
                "bracket_hi": math.nan,
                "evaluations": 0,
                "status": self.status,
            }
        return {
            "axis_value": self.axis_value,
            "estimate": self.estimate.estimate,
            "bracket_lo": self.estimate.lower,
            "bracket_hi": self.estimate.upper,
            "evaluations": self.estimate.evaluations,
            "status": self.status,
        }


def _check_sweep(axis: SweepAxis, fixed: SweepFixed, task: ThresholdTask) -> None:
    if axis is SweepAxis.Q and task is ThresholdTask.QC:
        raise ConfigurationError("a Q_c sweep cannot run over Q")
    needed = {"mu", "nu"} | ({"q"} if task is ThresholdTask.ALPHA_MIN else set())
    missing = sorted(name for name in needed - {axis.value} if getattr(fixed, name) is None)
    if missing:
        raise ConfigurationError(f"sweep over {axis.value} needs fixed {', '.join(missing)}")


def _sweep_point(
    task: ThresholdTask,
    axis: SweepAxis,
    bundle: SweepFixed,
    point: float,
    scan_step: Optional[float],
    grid: GridSpec,
    policy: FatePolicy,
) -> SweepRow:
    """Estimate one sweep point; errors become the row status."""
    scan: Optional[ScanConfig] = None
    try:
        exps = ModelExponents(float(bundle.mu), float(bundle.nu))  # type: ignore[arg-type]
        if task is ThresholdTask.QC:
            start = default_q_start(exps)
            step = scan_step or get_experiment_config().scan.q_step
            value = bundle.alpha
        else:
            start = get_experiment_config().scan.alpha_start
            step = scan_step or get_experiment_config().scan.alpha_step
            value = float(bundle.q)  # type: ignore[arg-type]
        scan = ScanConfig.create(start, step)
        estimate = estimate_with_pilot(task, exps, bundle.family, value, scan, grid, policy)
        return SweepRow(point, estimate, estimate.status, scan)
    except PatchSurvivalError as e:
        logger.warning("sweep point %s=%g failed: %s", axis.value, point, e)
        return SweepRow(point, None, f"error: {e.__class__.__name__}: {e}", scan)


def default_workers() -> int:
    """Worker count from the configured environment variable, else the CPU count."""
    name = get_runtime_config().workers_env_var
    raw = os.environ.get(name, "")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            logger.warning("Ignoring non-integer %s=%r", name, raw)
    return os.cpu_count() or 1


def sweep(
    axis: Union[SweepAxis, str],
    fixed: SweepFixed,
    points: Sequence[float],
    task: Union[ThresholdTask, str],
    workers: Optional[int] = None,
    grid: Optional[GridSpec] = None,
    policy: Optional[FatePolicy] = None,
    scan_step: Optional[float] = None,
    progress: bool = True,
) -> List[SweepRow]:
    """
    Estimate a critical value at every point of a parameter axis.

    Points are independent: each runs a pilot scan and a fine scan whose step
    is at most pilot_step_fraction of its pilot estimate. Rows come back in
    input order; per-point errors are recorded in the row status.

    Args:
        axis: mu, nu or q
        fixed: Parameters held fixed
        points: Strictly increasing axis values
        task: qc or alpha-min
        workers: Process count (default: environment variable, else the CPU count)
        grid: Grid resolution
        policy: Fate thresholds
        scan_step: Upper bound on the fine step (default: configured step)
        progress: Show a tqdm progress bar

    Returns:
        One SweepRow per point, in input order

    Raises:
        ConfigurationError: If the points or fixed bundle are inconsistent
    """
    axis = SweepAxis(axis)
    task = ThresholdTask(task)
    points = [float(p) for p in points]
    valid, message = validate_increasing(points)
    if not valid:
        raise ConfigurationError(message)
    _check_sweep(axis, fixed, task)

    grid = grid or GridSpec.from_config()
    policy = policy or FatePolicy.from_config()
    workers = workers or default_workers()
    logger.info(
        "Sweep %s over %s: %d points, %d worker(s)", task.value, axis.value, len(points), workers
    )

    jobs = [(task, axis, fixed.at(axis, p), p, scan_step, grid, policy) for p in points]
    rows: List[Optional[SweepRow]] = [None] * len(jobs)
    bar = tqdm(total=len(jobs), desc=f"{task.value} over {axis.value}", disable=not progress)

    if workers == 1:
        for index, job in enumerate(jobs):
            rows[index] = _sweep_point(*job)
            bar.update(1)
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(_sweep_point, *job): i for i, job in enumerate(jobs)}
            for future in as_completed(futures):
                rows[futures[future]] = future.result()
                bar.update(1)
    bar.close()

    return [row for row in rows if row is not None]
