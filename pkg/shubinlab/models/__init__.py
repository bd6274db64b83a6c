from .run_config import RunConfig
from .report import CheckResult, Expectation, Report

__all__ = ("RunConfig", "CheckResult", "Expectation", "Report")
