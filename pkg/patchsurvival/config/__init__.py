"""
JSON-backed configuration for patchsurvival, one module per concern.

- runtime: logging, output naming, worker-count source
- experiments: grid defaults, fate thresholds, scan settings, run presets
- messages: CLI result lines

Each module exposes a frozen dataclass with a load() classmethod and a lazy
get_*_config() accessor.
"""

from patchsurvival.config.experiments import ExperimentConfig, get_experiment_config
from patchsurvival.config.messages import MessageTemplates, get_message_templates
from patchsurvival.config.runtime import RuntimeConfig, get_runtime_config

__all__ = [
    "ExperimentConfig",
    "MessageTemplates",
    "RuntimeConfig",
    "get_experiment_config",
    "get_message_templates",
    "get_runtime_config",
]
