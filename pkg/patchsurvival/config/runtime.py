"""
Runtime settings: logging, output file names, CSV number rendering and the
environment variable that sets the default worker count.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from patchsurvival.config.loader import build_section, read_json


@dataclass(frozen=True)
class Logging:
    level: str
    format: str


@dataclass(frozen=True)
class Output:
    """Output naming scheme; snapshot_template takes a {time} placeholder."""

    trajectory_file: str
    snapshot_template: str
    sweep_file: str
    trace_file: str
    profile_file: str
    manifest_file: str
    significant_digits: int

    @property
    def float_format(self) -> str:
        return f"%.{self.significant_digits}g"


@dataclass(frozen=True)
class RuntimeConfig:
    logging: Logging
    output: Output
    workers_env_var: str

    @classmethod
    def load(cls, config_path: Optional[Path] = None) -> "RuntimeConfig":
        """
        Read runtime.json (or config_path).

        Raises:
            FileNotFoundError: If the file is missing
            ValueError: If it is not valid JSON or lacks a setting
        """
        data = read_json("runtime.json", config_path)
        if "workers_env_var" not in data:
            raise ValueError("Runtime config lacks 'workers_env_var'")
        return cls(
            logging=build_section(Logging, data, "logging"),
            output=build_section(Output, data, "output"),
            workers_env_var=str(data["workers_env_var"]),
        )


_runtime_config: Optional[RuntimeConfig] = None


def get_runtime_config(config_path: Optional[Path] = None) -> RuntimeConfig:
    """Process-wide RuntimeConfig; config_path only matters on the first call."""
    global _runtime_config
    if _runtime_config is None:
        _runtime_config = RuntimeConfig.load(config_path)
    return _runtime_config
