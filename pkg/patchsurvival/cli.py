#!/usr/bin/env python3
"""
Command-line front end for patchsurvival.

Usage:
    patchsurvival simulate --mu 4 --nu 2 --family f1 --alpha 100 --q 0.9
    patchsurvival qc --mu 4 --nu 2 --family f1 --alpha 100 --dq 0.0002
    patchsurvival alpha-min --mu 4 --nu 2 --family f2 --q 2 --dalpha 0.001
    patchsurvival sweep --task qc --axis mu --nu 1 --alpha 0 --points 1:6:0.25
    patchsurvival critical --mu 1 --nu 1 --a 1 --D 1
    patchsurvival profile --family f2 --alphas 0,1,10,100
    patchsurvival --preset f1-extinction-profiles
    patchsurvival --manifest out/manifest.json

Exit status: 0 on success, 1 on invalid input or a failed scan, 2 when a
simulation ends Inconclusive.
"""

import argparse
import logging
import sys
from argparse import Namespace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from patchsurvival import __version__, export
from patchsurvival.config import get_experiment_config, get_message_templates, get_runtime_config
from patchsurvival.constants import (
    EXIT_ERROR,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    STATUS_ALREADY_SURVIVES,
    STATUS_CAPPED,
    STATUS_OK,
    Direction,
    Family,
    Outcome,
    SweepAxis,
    ThresholdTask,
)
from patchsurvival.dist import InitialProfile, profile_max, unit_shape
from patchsurvival.exceptions import (
    ConfigurationError,
    DegenerateCaseError,
    PatchSurvivalError,
    ScanError,
)
from patchsurvival.scaling import (
    ModelExponents,
    NondimProblem,
    PhysicalParams,
    critical_habitat,
    critical_population,
    equal_exponent_critical,
    nondimensionalize,
    problem_from_q,
)
from patchsurvival.solver import FatePolicy, GridSpec, run
from patchsurvival.threshold import (
    ScanConfig,
    SweepFixed,
    ThresholdEstimate,
    default_q_start,
    estimate_alpha_min,
    estimate_qc,
    estimate_with_pilot,
    sweep,
)
from utils.string_utils import format_number, parse_float_list, parse_points

logger = logging.getLogger(__name__)

# Options that belong to the top-level parser, not to a command
_TOP_LEVEL = ("output_dir", "log_level", "verbose", "quiet", "preset", "manifest")

_PHYSICAL = ("a", "D", "l", "n0")

# Preset keys named after the command-line flag rather than the argument
_PRESET_ALIASES = {"dq": "step", "dalpha": "step"}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_model_arguments(parser: argparse.ArgumentParser, family_default: str = "f1") -> None:
    parser.add_argument("--mu", type=float, help="Growth exponent mu")
    parser.add_argument("--nu", type=float, help="Diffusion exponent nu")
    parser.add_argument(
        "--family",
        choices=[f.value for f in Family],
        default=family_default,
        help=f"Initial-distribution family (default: {family_default})",
    )


def _add_grid_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("grid")
    group.add_argument("--m", type=int, help="Node intervals (default: config)")
    group.add_argument("--k-over-h2", type=float, help="Time step as a multiple of h^2")
    group.add_argument("--k", type=float, help="Fixed time step, overrides --k-over-h2")
    group.add_argument("--t-max", type=float, help="Integration horizon")


def _add_fate_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("fate classification")
    group.add_argument("--floor-frac", type=float, help="Extinction floor as a fraction of N(0)")
    group.add_argument("--ceil-frac", type=float, help="Growth ceiling as a multiple of N(0)")
    group.add_argument("--window", type=int, help="Trailing window in steps")
    group.add_argument("--blowup-cap", type=float, help="Node value treated as blow-up")
    group.add_argument(
        "--reaction-ratio-floor",
        type=float,
        help="Diffusion-dominated extinction ratio, 0 disables",
    )
    group.add_argument(
        "--rate-interval", type=float, help="Time between separable-rate samples (mu = nu)"
    )
    group.add_argument(
        "--rate-checks", type=int, help="Consecutive agreeing rates needed for a verdict"
    )
    group.add_argument(
        "--rate-tolerance", type=float, help="Relative rate agreement (mu = nu), 0 disables"
    )
    group.add_argument(
        "--no-trend-resolution",
        dest="resolve_by_trend",
        action="store_false",
        default=None,
        help="Do not read Inconclusive scan runs by their trend",
    )
    group.add_argument(
        "--stride", type=int, help="Record N(T) every this many steps, 0 for automatic"
    )


def _add_scan_arguments(parser: argparse.ArgumentParser, step_flag: str) -> None:
    group = parser.add_argument_group("scan")
    group.add_argument(step_flag, dest="step", type=float, help="Scan step (default: config)")
    group.add_argument("--start", type=float, help="Scan start (default: config)")
    group.add_argument("--max-iters", type=int, help="Iteration budget (default: reach zero)")
    group.add_argument("--refine", action="store_true", help="Bisect inside the bracket")
    group.add_argument("--refine-tol", type=float, help="Refinement bracket width")
    group.add_argument(
        "--pilot",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="Coarse pilot scan first (default: on unless --start is given)",
    )


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with all commands."""
    parser = argparse.ArgumentParser(
        prog="patchsurvival",
        description="Population survival on a bounded habitat: simulation and critical thresholds",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  patchsurvival simulate --mu 4 --nu 2 --family f1 --alpha 100 --q 0.9
  patchsurvival qc --mu 4 --nu 2 --family f1 --alpha 100 --dq 0.0002
  patchsurvival --output-dir out --preset qc-vs-mu-nu1-f1
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--output-dir", type=Path, help="Output directory (default: .)")
    parser.add_argument("--log-level", default=None, help="Logging level (default: config)")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--quiet", action="store_true", help="Warnings only, no progress bar")
    parser.add_argument("--preset", help="Run a stored preset, e.g. qc-f1-alpha100")
    parser.add_argument("--manifest", type=Path, help="Repeat the run recorded in a manifest")

    commands = parser.add_subparsers(dest="command")

    simulate = commands.add_parser("simulate", help="Integrate one run and classify its fate")
    _add_model_arguments(simulate)
    simulate.add_argument("--alpha", type=float, default=0.0, help="Shape parameter")
    simulate.add_argument("--q", type=float, help="Survival parameter Q (nondimensional mode)")
    simulate.add_argument("--a", type=float, help="Growth coefficient (physical mode)")
    simulate.add_argument("--D", type=float, help="Diffusion coefficient (physical mode)")
    simulate.add_argument("--l", type=float, help="Habitat length (physical mode)")
    simulate.add_argument("--n0", type=float, help="Total initial population (physical mode)")
    simulate.add_argument("--snapshots", default="", help="Comma-separated snapshot times")
    _add_grid_arguments(simulate)
    _add_fate_arguments(simulate)

    qc = commands.add_parser("qc", help="Estimate Q_c by a descending Q scan")
    _add_model_arguments(qc)
    qc.add_argument("--alpha", type=float, default=0.0, help="Shape parameter")
    _add_scan_arguments(qc, "--dq")
    _add_grid_arguments(qc)
    _add_fate_arguments(qc)

    alpha_min = commands.add_parser("alpha-min", help="Estimate alpha_min by a descending scan")
    _add_model_arguments(alpha_min)
    alpha_min.add_argument("--q", type=float, help="Survival parameter Q")
    _add_scan_arguments(alpha_min, "--dalpha")
    _add_grid_arguments(alpha_min)
    _add_fate_arguments(alpha_min)

    sweep_cmd = commands.add_parser("sweep", help="Estimate a critical value along an axis")
    _add_model_arguments(sweep_cmd)
    sweep_cmd.add_argument("--task", choices=[t.value for t in ThresholdTask], default="qc")
    sweep_cmd.add_argument("--axis", choices=[a.value for a in SweepAxis], default="mu")
    sweep_cmd.add_argument("--alpha", type=float, default=0.0, help="Shape parameter (qc)")
    sweep_cmd.add_argument("--q", type=float, help="Survival parameter (alpha-min)")
    sweep_cmd.add_argument("--points", help="start:stop:step or comma-separated values")
    sweep_cmd.add_argument("--step", type=float, help="Upper bound on the fine scan step")
    sweep_cmd.add_argument(
        "--workers", type=int, help="Worker processes (default: environment, else CPU count)"
    )
    _add_grid_arguments(sweep_cmd)
    _add_fate_arguments(sweep_cmd)

    critical = commands.add_parser("critical", help="Critical habitat size or population")
    _add_model_arguments(critical)
    critical.add_argument("--alpha", type=float, default=0.0, help="Shape parameter")
    critical.add_argument("--a", type=float, help="Growth coefficient")
    critical.add_argument("--D", type=float, help="Diffusion coefficient")
    critical.add_argument("--n0", type=float, default=1.0, help="Total population (default: 1)")
    critical.add_argument("--l", type=float, help="Habitat length (population target)")
    critical.add_argument("--qc", type=float, help="Known Q_c; estimated when omitted")
    critical.add_argument(
        "--target", choices=["habitat", "population"], default="habitat", help="Quantity to report"
    )
    _add_scan_arguments(critical, "--dq")
    _add_grid_arguments(critical)
    _add_fate_arguments(critical)

    profile = commands.add_parser("profile", help="Write sampled initial profiles")
    profile.add_argument(
        "--family", choices=[Family.SYMMETRIC_F1.value, Family.ASYMMETRIC_F2.value], default="f1"
    )
    profile.add_argument("--alphas", default="0,1,10,100,500", help="Comma-separated alphas")
    profile.add_argument("--points", type=int, default=1001, help="Sample points on [-1/2, 1/2]")

    return parser


# ---------------------------------------------------------------------------
# Argument resolution
# ---------------------------------------------------------------------------


def _require(args: Namespace, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name, None) is None]
    if missing:
        raise ConfigurationError(f"{args.command} needs {', '.join(missing)}")


def _exponents(args: Namespace) -> ModelExponents:
    _require(args, "mu", "nu")
    return ModelExponents(float(args.mu), float(args.nu))


def _grid_spec(args: Namespace) -> GridSpec:
    return GridSpec.from_config(
        m=getattr(args, "m", None),
        k_over_h2=getattr(args, "k_over_h2", None),
        k=getattr(args, "k", None),
        t_max=getattr(args, "t_max", None),
    )


def _policy(args: Namespace) -> FatePolicy:
    return FatePolicy.from_config(
        floor_frac=getattr(args, "floor_frac", None),
        ceil_frac=getattr(args, "ceil_frac", None),
        window=getattr(args, "window", None),
        blowup_cap=getattr(args, "blowup_cap", None),
        reaction_ratio_floor=getattr(args, "reaction_ratio_floor", None),
        rate_interval=getattr(args, "rate_interval", None),
        rate_checks=getattr(args, "rate_checks", None),
        rate_tolerance=getattr(args, "rate_tolerance", None),
        resolve_by_trend=getattr(args, "resolve_by_trend", None),
        trajectory_stride=getattr(args, "stride", None),
    )


def _scan(args: Namespace, parameter: str, exps: ModelExponents) -> ScanConfig:
    settings = get_experiment_config().scan
    if parameter == "Q":
        start = args.start if args.start is not None else default_q_start(exps)
        step = args.step if args.step is not None else settings.q_step
    else:
        start = args.start if args.start is not None else settings.alpha_start
        step = args.step if args.step is not None else settings.alpha_step
    return ScanConfig.create(start, step, args.max_iters, args.refine, args.refine_tol)


def _use_pilot(args: Namespace) -> bool:
    if args.pilot is not None:
        return bool(args.pilot)
    return args.start is None


def _output_dir(args: Namespace) -> Path:
    return Path(args.output_dir) if args.output_dir is not None else Path(".")


def _float_list(value: Any) -> List[float]:
    try:
        if isinstance(value, str):
            return parse_float_list(value)
        return [float(v) for v in value or []]
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"invalid number list {value!r}: {e}")


def _sweep_points(value: Any) -> List[float]:
    if not isinstance(value, str):
        return _float_list(value)
    try:
        return parse_points(value)
    except ValueError as e:
        raise ConfigurationError(str(e))


def _manifest_arguments(args: Namespace) -> Dict[str, Any]:
    arguments = {key: value for key, value in vars(args).items() if key != "manifest"}
    if arguments.get("output_dir") is not None:
        arguments["output_dir"] = str(arguments["output_dir"])
    return arguments


def _write_manifest(args: Namespace, resolved: Dict[str, Any]) -> None:
    path = _output_dir(args) / get_runtime_config().output.manifest_file
    export.write_manifest(path, args.command, _manifest_arguments(args), resolved)
    print(get_message_templates().files.written.format(path=path))


def apply_preset(parser: argparse.ArgumentParser, args: Namespace) -> Namespace:
    """
    Replace the parsed command with a run preset.

    Args:
        parser: Parser used for the command defaults
        args: Parsed top-level arguments carrying --preset

    Returns:
        Namespace of the preset command with its parameters filled in

    Raises:
        ConfigurationError: If the preset is unknown or a command was also given
    """
    presets = get_experiment_config().presets
    if args.preset not in presets:
        raise ConfigurationError(f"unknown preset {args.preset!r}; known: {', '.join(presets)}")
    if args.command is not None:
        raise ConfigurationError("--preset replaces the command; give one or the other")

    preset = dict(presets[args.preset])
    resolved = parser.parse_args([preset.pop("command")])
    for name in _TOP_LEVEL:
        setattr(resolved, name, getattr(args, name))
    for key, value in preset.items():
        setattr(resolved, _PRESET_ALIASES.get(key, key), value)
    logger.info("Preset %s: %s", args.preset, preset)
    return resolved


def namespace_from_manifest(path: Path, args: Namespace) -> Namespace:
    """
    Rebuild the arguments of a recorded run.

    Top-level logging and output options given now take precedence.
    """
    payload = export.read_manifest(path)
    arguments = dict(payload["arguments"])
    arguments["command"] = payload["command"]
    arguments["manifest"] = None
    if args.output_dir is not None:
        arguments["output_dir"] = args.output_dir
    for name in ("log_level", "verbose", "quiet"):
        arguments[name] = getattr(args, name)
    logger.info("Repeating %s run from %s", payload["command"], path)
    return Namespace(**arguments)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _problem(args: Namespace, exps: ModelExponents, profile: InitialProfile) -> NondimProblem:
    physical = [name for name in _PHYSICAL if getattr(args, name, None) is not None]
    if args.q is not None and physical:
        raise ConfigurationError("give either --q or the physical parameters --a --D --l --n0")
    if args.q is not None:
        return problem_from_q(exps, float(args.q), profile)
    _require(args, *_PHYSICAL)
    phys = PhysicalParams(a=args.a, D=args.D, l=args.l, n0=args.n0)
    problem = nondimensionalize(exps, phys, profile)
    print(get_message_templates().fate.survival_parameter.format(q=problem.q))
    return problem


def cmd_simulate(args: Namespace) -> int:
    """Integrate one run, write its trajectory and snapshots, print its fate."""
    messages = get_message_templates()
    output = get_runtime_config().output
    exps = _exponents(args)
    profile = InitialProfile.create(args.family, args.alpha)
    problem = _problem(args, exps, profile)
    spec = _grid_spec(args)
    grid = spec.grid_for(problem.L)
    policy = _policy(args)

    peak = profile_max(profile, exps, problem.q) if exps.is_conditional else profile_max(profile)
    print(messages.fate.peak.format(value=peak.value, location=peak.location))

    report = run(problem, grid, policy, _float_list(args.snapshots))
    directory = _output_dir(args)
    paths = [export.write_trajectory(report, directory / output.trajectory_file)]
    paths += export.write_snapshots(report, grid, directory)

    print(
        messages.fate.summary.format(
            outcome=report.outcome.value, reason=report.stop_reason.value, time=report.stop_time
        )
    )
    print(messages.fate.trend.format(trend=report.trend.value))
    for path in paths:
        print(messages.files.written.format(path=path))
    _write_manifest(
        args, {"grid": spec.to_dict(), "policy": policy.to_dict(), "q": problem.q, "L": problem.L}
    )

    logger.info("Fate %s (%s)", report.outcome.value, report.stop_reason.value)
    return EXIT_INCONCLUSIVE if report.outcome is Outcome.INCONCLUSIVE else EXIT_OK


def _report_estimate(args: Namespace, estimate: ThresholdEstimate, line: str) -> None:
    messages = get_message_templates()
    print(line)
    path = export.write_trace(estimate, _output_dir(args) / get_runtime_config().output.trace_file)
    print(messages.files.written.format(path=path))


def _traced_scan(
    args: Namespace, resolved: Dict[str, Any], scan: Callable[[], ThresholdEstimate]
) -> ThresholdEstimate:
    """Run a scan; if it fails, still write its partial trace and the manifest."""
    try:
        return scan()
    except ScanError as e:
        trace_path = _output_dir(args) / get_runtime_config().output.trace_file
        path = export.write_trace(e.trace, trace_path)
        print(get_message_templates().files.written.format(path=path))
        _write_manifest(args, resolved)
        raise


def cmd_qc(args: Namespace) -> int:
    """Estimate Q_c and print the bracket."""
    exps = _exponents(args)
    scan = _scan(args, "Q", exps)
    spec, policy = _grid_spec(args), _policy(args)
    resolved = {"grid": spec.to_dict(), "policy": policy.to_dict(), "scan": scan.to_dict()}
    if _use_pilot(args):
        estimate = _traced_scan(
            args, resolved,
            lambda: estimate_with_pilot(
                ThresholdTask.QC, exps, args.family, args.alpha, scan, spec, policy
            ),
        )
    else:
        estimate = _traced_scan(
            args, resolved,
            lambda: estimate_qc(exps, args.family, args.alpha, scan, spec, policy),
        )

    line = get_message_templates().threshold.qc.format(
        mu=exps.mu, nu=exps.nu, family=args.family, alpha=args.alpha, estimate=estimate.estimate,
        lower=estimate.lower, upper=estimate.upper, evaluations=estimate.evaluations,
    )
    _report_estimate(args, estimate, line)
    _write_manifest(args, resolved)
    return EXIT_OK


def cmd_alpha_min(args: Namespace) -> int:
    """Estimate alpha_min and print the bracket."""
    messages = get_message_templates()
    exps = _exponents(args)
    _require(args, "q")
    scan = _scan(args, "alpha", exps)
    spec, policy = _grid_spec(args), _policy(args)
    resolved = {"grid": spec.to_dict(), "policy": policy.to_dict(), "scan": scan.to_dict()}
    if _use_pilot(args):
        estimate = _traced_scan(
            args, resolved,
            lambda: estimate_with_pilot(
                ThresholdTask.ALPHA_MIN, exps, args.family, args.q, scan, spec, policy
            ),
        )
    else:
        estimate = _traced_scan(
            args, resolved,
            lambda: estimate_alpha_min(exps, args.family, args.q, scan, spec, policy),
        )

    if estimate.already_survives:
        print(messages.threshold.already_survives.format(q=args.q))
    if estimate.capped:
        print(messages.threshold.capped.format(cap=get_experiment_config().scan.alpha_cap))
    line = messages.threshold.alpha_min.format(
        mu=exps.mu, nu=exps.nu, family=args.family, q=args.q, estimate=estimate.estimate,
        lower=estimate.lower, upper=estimate.upper, evaluations=estimate.evaluations,
    )
    _report_estimate(args, estimate, line)
    _write_manifest(args, resolved)
    return EXIT_OK


def cmd_sweep(args: Namespace) -> int:
    """Run a sweep, write the table, exit 1 if any point failed."""
    _require(args, "points")
    points = _sweep_points(args.points)
    fixed = SweepFixed(
        family=Family(args.family), mu=args.mu, nu=args.nu, alpha=args.alpha, q=args.q
    )
    spec, policy = _grid_spec(args), _policy(args)
    rows = sweep(
        args.axis, fixed, points, args.task, workers=args.workers, grid=spec, policy=policy,
        scan_step=args.step, progress=not args.quiet and sys.stderr.isatty(),
    )

    path = export.write_sweep(rows, _output_dir(args) / get_runtime_config().output.sweep_file)
    messages = get_message_templates()
    good = (STATUS_OK, STATUS_ALREADY_SURVIVES, STATUS_CAPPED)
    ok = sum(row.status in good for row in rows)
    print(messages.threshold.sweep.format(task=args.task, axis=args.axis, ok=ok, total=len(rows)))
    for row in rows:
        estimate = format_number(row.estimate.estimate) if row.estimate else "nan"
        print(f"  {args.axis}={format_number(row.axis_value)}  {estimate}  {row.status}")
    print(messages.files.written.format(path=path))
    scans = [
        {"axis_value": row.axis_value, "scan": row.scan.to_dict() if row.scan else None}
        for row in rows
    ]
    _write_manifest(
        args,
        {
            "grid": spec.to_dict(),
            "policy": policy.to_dict(),
            "fixed": fixed.to_dict(),
            "scans": scans,
        },
    )
    return EXIT_OK if ok == len(rows) else EXIT_ERROR


def _critical_qc(args: Namespace, exps: ModelExponents) -> float:
    if args.qc is not None:
        return float(args.qc)
    if exps.is_equal:
        return equal_exponent_critical(exps).qc
    scan = _scan(args, "Q", exps)
    spec, policy = _grid_spec(args), _policy(args)
    if _use_pilot(args):
        estimate = estimate_with_pilot(
            ThresholdTask.QC, exps, args.family, args.alpha, scan, spec, policy
        )
    else:
        estimate = estimate_qc(exps, args.family, args.alpha, scan, spec, policy)
    return estimate.estimate


def cmd_critical(args: Namespace) -> int:
    """Print the critical habitat size or the critical total population."""
    messages = get_message_templates().critical
    exps = _exponents(args)
    _require(args, "a", "D")
    if not exps.is_conditional:
        print(messages.unsupported.format(reason=f"mu={exps.mu:g} < nu={exps.nu:g}"))
        return EXIT_ERROR

    qc = _critical_qc(args, exps)
    print(messages.qc_used.format(qc=qc))

    if args.target == "population":
        if exps.is_equal:
            print(messages.unconstrained_population)
            return EXIT_OK
        if not exps.is_degenerate:
            _require(args, "l")
        length = args.l if args.l is not None else 1.0
        population = critical_population(exps, qc, args.a, args.D, length)
        print(messages.population.format(population=population))
        return EXIT_OK

    try:
        habitat = critical_habitat(exps, qc, args.a, args.D, args.n0)
    except DegenerateCaseError:
        population = critical_population(exps, qc, args.a, args.D, 1.0)
        print(messages.degenerate.format(population=population))
        return EXIT_ERROR

    relation = ">=" if habitat.direction is Direction.MINIMUM_SIZE else "<="
    print(
        messages.habitat.format(
            size=habitat.size, direction=habitat.direction.value, relation=relation
        )
    )
    return EXIT_OK


def cmd_profile(args: Namespace) -> int:
    """Write initial profiles relative to the homogeneous density."""
    alphas = _float_list(args.alphas)
    nodes = np.linspace(-0.5, 0.5, int(args.points))
    columns = {}
    for alpha in alphas:
        profile = InitialProfile.create(args.family, alpha)
        columns[f"alpha={format_number(alpha)}"] = np.asarray(unit_shape(profile, nodes))
    path = export.write_profiles(
        nodes, columns, _output_dir(args) / get_runtime_config().output.profile_file
    )
    print(get_message_templates().files.written.format(path=path))
    _write_manifest(args, {"alphas": alphas})
    return EXIT_OK


COMMANDS: Dict[str, Callable[[Namespace], int]] = {
    "simulate": cmd_simulate,
    "qc": cmd_qc,
    "alpha-min": cmd_alpha_min,
    "sweep": cmd_sweep,
    "critical": cmd_critical,
    "profile": cmd_profile,
}


def _configure_logging(args: Namespace) -> None:
    settings = get_runtime_config().logging
    level = settings.level
    if args.quiet:
        level = "WARNING"
    if args.verbose:
        level = "DEBUG"
    if args.log_level:
        level = args.log_level.upper()
    logging.basicConfig(level=level, format=settings.format, force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Exit status
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)

    try:
        if args.manifest is not None:
            args = namespace_from_manifest(args.manifest, args)
        elif args.preset is not None:
            args = apply_preset(parser, args)

        if args.command is None:
            parser.print_help()
            return EXIT_ERROR
        if args.command not in COMMANDS:
            raise ConfigurationError(f"unknown command {args.command!r}")
        return COMMANDS[args.command](args)
    except PatchSurvivalError as e:
        logger.debug("Command failed", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
