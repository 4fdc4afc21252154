"""
Validation utility functions for patchsurvival.

This module contains validation checks for numeric parameters, grids and
scan point lists used throughout the solver, threshold and CLI code. Checks
return booleans or (is_valid, error_message) pairs; callers decide which
exception to raise.
"""

import logging
import math
from typing import Any, Sequence, Tuple

logger = logging.getLogger(__name__)


def is_positive(value: Any) -> bool:
    """
    Check that a value is a finite real number strictly greater than zero.

    Args:
        value: Value to check

    Returns:
        True if value is a finite positive real, False otherwise

    Example:
        >>> is_positive(0.5)
        True
        >>> is_positive(0)
        False
        >>> is_positive(float("inf"))
        False
    """
    if isinstance(value, bool):
        return False
    try:
        number = float(value)
    except (TypeError, ValueError):
        return False
    return math.isfinite(number) and number > 0.0


def is_nonnegative(value: Any) -> bool:
    """
    Check that a value is a finite real number greater than or equal to zero.

    Args:
        value: Value to check

    Returns:
        True if value is a finite nonnegative real, False otherwise
    """
    if isinstance(value, bool):
        return False
    try:
        number = float(value)
    except (TypeError, ValueError):
        return False
    return math.isfinite(number) and number >= 0.0


def validate_positive_fields(**fields: Any) -> Tuple[bool, str]:
    """
    Validate that every named field is a finite positive real.

    Args:
        **fields: Field names mapped to values

    Returns:
        Tuple of (is_valid, error_message) naming the first offending field
    """
    for name, value in fields.items():
        if not is_positive(value):
            return False, f"{name} must be a finite positive number, got {value!r}"
    return True, ""


def validate_increasing(points: Sequence[float]) -> Tuple[bool, str]:
    """
    Validate that a sequence of sweep points is non-empty and strictly increasing.

    Args:
        points: Sweep points in input order

    Returns:
        Tuple of (is_valid, error_message)
    """
    if len(points) == 0:
        return False, "no sweep points given"

    for previous, current in zip(points, points[1:]):
        if not current > previous:
            return False, f"sweep points must be strictly increasing: {previous} then {current}"

    return True, ""


def validate_grid(m: Any, k: Any, t_max: Any, min_intervals: int) -> Tuple[bool, str]:
    """
    Validate grid resolution parameters.

    Args:
        m: Number of node intervals
        k: Time step
        t_max: Integration horizon
        min_intervals: Smallest accepted interval count

    Returns:
        Tuple of (is_valid, error_message)
    """
    if isinstance(m, bool) or not isinstance(m, int):
        return False, f"grid interval count must be an integer, got {m!r}"
    if m < min_intervals:
        return False, f"grid interval count must be at least {min_intervals}, got {m}"
    if not is_positive(k):
        return False, f"time step must be positive, got {k!r}"
    if not is_positive(t_max):
        return False, f"horizon must be positive, got {t_max!r}"
    if t_max < k:
        logger.debug("Horizon %s shorter than time step %s", t_max, k)
        return False, f"horizon {t_max} is shorter than the time step {k}"
    return True, ""


def validate_scan(start: Any, step: Any, max_iters: Any) -> Tuple[bool, str]:
    """
    Validate a descending scan configuration.

    The scan must be able to reach zero: max_iters * step >= start.

    Args:
        start: First scanned value
        step: Decrement per iteration
        max_iters: Iteration budget

    Returns:
        Tuple of (is_valid, error_message)
    """
    valid, message = validate_positive_fields(start=start, step=step)
    if not valid:
        return valid, message
    if not step < start:
        return False, f"scan step {step} must be smaller than the start {start}"
    if isinstance(max_iters, bool) or not isinstance(max_iters, int) or max_iters < 1:
        return False, f"max_iters must be a positive integer, got {max_iters!r}"
    if max_iters * step < start * (1.0 - 1e-12):
        return False, f"max_iters*step = {max_iters * step} cannot reach zero from {start}"
    return True, ""
