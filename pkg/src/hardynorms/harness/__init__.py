from .reports import CheckReport, emit_report, parse_report, has_failures
from .checks import CHECKS, REQUIRED_COVERAGE, run_experiment

__all__ = [
    "CheckReport",
    "emit_report",
    "parse_report",
    "has_failures",
    "CHECKS",
    "REQUIRED_COVERAGE",
    "run_experiment",
]
