"""
JSON reading shared by the configuration modules.
"""

import json
from dataclasses import fields
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Type, TypeVar

T = TypeVar("T")

_SCALARS = (int, float, str, bool)


def read_json(default_name: str, config_path: Optional[Path] = None) -> Dict[str, Any]:
    """
    Read a configuration file, by default the one shipped next to this module.

    Args:
        default_name: File name inside the config package
        config_path: Explicit file to read instead

    Returns:
        Parsed top-level object

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: If the file is not valid JSON
    """
    path = Path(config_path) if config_path is not None else Path(__file__).parent / default_name
    try:
        with open(path) as f:
            return json.load(f)
    except FileNotFoundError:
        raise FileNotFoundError(f"Config file not found: {path}")
    except json.JSONDecodeError as e:
        raise ValueError(f"Invalid JSON in {path}: {e}")


def build_section(cls: Type[T], data: Mapping[str, Any], section: str) -> T:
    """
    Build a frozen dataclass from data[section], casting scalar fields.

    Raises:
        ValueError: If the section or one of its fields is missing
    """
    if not isinstance(data.get(section), Mapping):
        raise ValueError(f"Config lacks section '{section}'")
    data = data[section]
    values = {}
    for field in fields(cls):  # type: ignore[arg-type]
        if field.name not in data:
            raise ValueError(f"Config section '{section}' lacks '{field.name}'")
        raw = data[field.name]
        values[field.name] = field.type(raw) if field.type in _SCALARS else raw
    return cls(**values)
