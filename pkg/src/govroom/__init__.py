"""govroom: a cybersecurity-governance escape room engine and service.

Three sequential zones (risk maze, framework matching, policy drafting) run
on a deterministic, event-sourced session core behind an HTTP + SSE gateway.
"""

from .errors import GameError
from .scenario import Scenario, parse_scenario, scenario_to_document, severity

__version__ = "0.1.0"

__all__ = [
    "GameError",
    "Scenario",
    "parse_scenario",
    "scenario_to_document",
    "severity",
    "__version__",
]
