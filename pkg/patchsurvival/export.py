"""
File output for patchsurvival.

Tabular results are written as CSV through pandas with the configured number
of significant digits; run manifests are JSON. All names come from
RuntimeConfig.output.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from patchsurvival.config import get_runtime_config
from patchsurvival.constants import (
    SNAPSHOT_HEADER,
    SWEEP_HEADER,
    TRACE_HEADER,
    TRAJECTORY_HEADER,
    Outcome,
)
from patchsurvival.exceptions import ConfigurationError
from patchsurvival.solver import FateReport, Grid
from patchsurvival.threshold import SweepRow, ThresholdEstimate
from utils.string_utils import format_time_label

logger = logging.getLogger(__name__)

MANIFEST_VERSION = 1


def _write_frame(frame: pd.DataFrame, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=get_runtime_config().output.float_format)
    logger.info("Wrote %s (%d rows)", path, len(frame))
    return path


def write_trajectory(report: FateReport, path: Path) -> Path:
    """Write the (T, N) samples of a run."""
    frame = pd.DataFrame(
        {TRAJECTORY_HEADER[0]: report.times, TRAJECTORY_HEADER[1]: report.populations}
    )
    return _write_frame(frame, path)


def write_snapshot(nodes: np.ndarray, rho: np.ndarray, path: Path) -> Path:
    """Write one density profile as (X, rho) rows."""
    frame = pd.DataFrame({SNAPSHOT_HEADER[0]: nodes, SNAPSHOT_HEADER[1]: rho})
    return _write_frame(frame, path)


def write_snapshots(report: FateReport, grid: Grid, directory: Path) -> List[Path]:
    """
    Write every captured snapshot of a run.

    Files are named from RuntimeConfig.output.snapshot_template with the
    requested time, e.g. snapshot_T0.01.csv.

    Args:
        report: Fate report with snapshots
        grid: Grid of the run
        directory: Output directory

    Returns:
        Paths written, in requested-time order
    """
    template = get_runtime_config().output.snapshot_template
    nodes = grid.nodes()
    paths = []
    for snap in report.snapshots:
        name = template.format(time=format_time_label(snap.requested))
        paths.append(write_snapshot(nodes, snap.rho, Path(directory) / name))
    return paths


def write_sweep(rows: Sequence[SweepRow], path: Path) -> Path:
    """Write sweep rows with the fixed sweep header."""
    frame = pd.DataFrame([row.to_record() for row in rows], columns=list(SWEEP_HEADER))
    return _write_frame(frame, path)


def write_trace(
    source: Union[ThresholdEstimate, Sequence[Tuple[float, Outcome]]], path: Path
) -> Path:
    """
    Write the (value, outcome) runs of a scan, in the order they were made.

    Args:
        source: A finished estimate, or the trace of a scan that failed
        path: Output file

    Returns:
        Path written
    """
    trace = source.trace if isinstance(source, ThresholdEstimate) else source
    frame = pd.DataFrame(
        [(value, Outcome(outcome).value) for value, outcome in trace], columns=list(TRACE_HEADER)
    )
    return _write_frame(frame, path)


def write_profiles(nodes: np.ndarray, columns: Mapping[str, np.ndarray], path: Path) -> Path:
    """
    Write sampled initial profiles side by side.

    Args:
        nodes: Positions, first column "X"
        columns: Column name -> values at the nodes
        path: Output file

    Returns:
        Path written
    """
    frame = pd.DataFrame({SNAPSHOT_HEADER[0]: nodes, **dict(columns)})
    return _write_frame(frame, path)


def write_manifest(
    path: Path,
    command: str,
    arguments: Mapping[str, Any],
    resolved: Optional[Mapping[str, Any]] = None,
) -> Path:
    """
    Write a JSON manifest from which a run can be repeated.

    Args:
        path: Output file
        command: CLI command name
        arguments: Every parsed CLI argument, defaults included
        resolved: Resolved settings (grid, scan, policy) recorded for reference

    Returns:
        Path written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload: Dict[str, Any] = {
        "version": MANIFEST_VERSION,
        "command": command,
        "arguments": dict(arguments),
        "resolved": dict(resolved or {}),
    }
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True, default=_json_default)
        f.write("\n")
    logger.info("Wrote %s", path)
    return path


def read_manifest(path: Path) -> Dict[str, Any]:
    """
    Load a manifest written by write_manifest.

    Raises:
        ConfigurationError: If the file is missing, not JSON, or lacks fields
    """
    try:
        with open(path) as f:
            payload = json.load(f)
    except FileNotFoundError:
        raise ConfigurationError(f"Manifest not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Invalid JSON in {path}: {e}")

    if not isinstance(payload, dict) or "command" not in payload or "arguments" not in payload:
        raise ConfigurationError(f"Manifest {path} lacks command/arguments")
    if payload.get("version") != MANIFEST_VERSION:
        raise ConfigurationError(f"Unsupported manifest version {payload.get('version')!r}")
    return payload


def _json_default(value: Any) -> Any:
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "value"):
        return value.value
    raise TypeError(f"Cannot serialise {type(value).__name__}")
