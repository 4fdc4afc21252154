"""
Result lines printed by the command-line front end, as str.format templates.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from patchsurvival.config.loader import build_section, read_json


@dataclass(frozen=True)
class FateMessages:
    summary: str
    trend: str
    survival_parameter: str
    peak: str


@dataclass(frozen=True)
class ThresholdMessages:
    qc: str
    alpha_min: str
    already_survives: str
    capped: str
    sweep: str


@dataclass(frozen=True)
class CriticalMessages:
    """Lines of the critical command, including the regime notices."""

    habitat: str
    population: str
    degenerate: str
    unconstrained_population: str
    unsupported: str
    qc_used: str


@dataclass(frozen=True)
class FileMessages:
    written: str


@dataclass(frozen=True)
class MessageTemplates:
    fate: FateMessages
    threshold: ThresholdMessages
    critical: CriticalMessages
    files: FileMessages

    @classmethod
    def load(cls, config_path: Optional[Path] = None) -> "MessageTemplates":
        """Read messages.json (or config_path); errors as for RuntimeConfig.load."""
        data = read_json("messages.json", config_path)
        return cls(
            fate=build_section(FateMessages, data, "fate"),
            threshold=build_section(ThresholdMessages, data, "threshold"),
            critical=build_section(CriticalMessages, data, "critical"),
            files=build_section(FileMessages, data, "files"),
        )


_message_templates: Optional[MessageTemplates] = None


def get_message_templates(config_path: Optional[Path] = None) -> MessageTemplates:
    global _message_templates
    if _message_templates is None:
        _message_templates = MessageTemplates.load(config_path)
    return _message_templates
