"""Blocks of interior algebras over GF(p), Brauer quotients and Clifford extensions."""

from .errors import ConstructionError, TheoremViolation, UnsupportedError
from .scenario import Scenario, from_dict, load
from .verify import emit_report, run_group_algebra_case, run_scenario

__all__ = [
    "ConstructionError",
    "Scenario",
    "TheoremViolation",
    "UnsupportedError",
    "emit_report",
    "from_dict",
    "load",
    "run_group_algebra_case",
    "run_scenario",
]
__version__ = "0.1.0"
