"""
String utility functions for patchsurvival.

This module contains number rendering and point-list parsing used by the
exporters and the command-line front end.
"""

from typing import List


def format_number(value: float, digits: int = 15) -> str:
    """
    Render a float with a fixed number of significant digits.

    Args:
        value: Number to render
        digits: Significant digits (default: 15)

    Returns:
        Plain decimal or exponent notation, whichever %g picks

    Example:
        >>> format_number(0.1 + 0.2)
        '0.3'
        >>> format_number(1.0 / 3.0, digits=4)
        '0.3333'
    """
    return f"{value:.{digits}g}"


def format_time_label(time: float) -> str:
    """
    Render a snapshot time for use inside a file name.

    Args:
        time: Nondimensional time

    Returns:
        Compact label without characters that are awkward in file names

    Example:
        >>> format_time_label(0.5)
        '0.5'
        >>> format_time_label(1e-05)
        '1e-05'
    """
    return f"{time:g}".replace("+", "")


def parse_points(text: str) -> List[float]:
    """
    Parse a sweep point specification.

    Two forms are accepted: a range ``start:stop:step`` (stop inclusive when it
    lands on the grid) or a comma-separated list of numbers.

    Args:
        text: Point specification

    Returns:
        List of floats in the given order

    Raises:
        ValueError: If the specification cannot be parsed

    Example:
        >>> parse_points("1:2:0.25")
        [1.0, 1.25, 1.5, 1.75, 2.0]
        >>> parse_points("0.5, 2, 3")
        [0.5, 2.0, 3.0]
    """
    text = text.strip()
    if not text:
        raise ValueError("empty point specification")

    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (float(part) for part in parts)
        if step <= 0.0:
            raise ValueError(f"range step must be positive, got {step}")
        count = int(round((stop - start) / step)) if stop >= start else -1
        if count < 0:
            raise ValueError(f"range stop {stop} is below start {start}")
        if start + count * step > stop + 1e-9 * step:
            count -= 1
        return [round(start + i * step, 12) for i in range(count + 1)]

    return [float(part) for part in text.split(",") if part.strip()]


def parse_float_list(text: str) -> List[float]:
    """
    Parse a comma-separated list of floats.

    Args:
        text: Comma-separated numbers

    Returns:
        List of floats, empty for an empty string

    Example:
        >>> parse_float_list("0, 0.1,1")
        [0.0, 0.1, 1.0]
    """
    return [float(part) for part in text.split(",") if part.strip()]
