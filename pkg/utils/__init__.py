"""
Utility modules for patchsurvival.

This package contains helper functions used throughout the codebase.
"""

from .string_utils import (
    format_number,
    format_time_label,
    parse_float_list,
    parse_points,
)
from .validation_utils import (
    is_nonnegative,
    is_positive,
    validate_grid,
    validate_increasing,
    validate_positive_fields,
    validate_scan,
)

__all__ = [
    "format_number",
    "format_time_label",
    "parse_float_list",
    "parse_points",
    "is_nonnegative",
    "is_positive",
    "validate_grid",
    "validate_increasing",
    "validate_positive_fields",
    "validate_scan",
]
