import logging
from typing import Dict, List, Type

from shubinlab.exceptions import ShubinLabConfigError
from shubinlab.models import CheckResult, Report, RunConfig
from shubinlab.suites.base import Suite
from shubinlab.suites.bornjordan import BornJordanSuite
from shubinlab.suites.cayley import CayleySuite
from shubinlab.suites.heisenberg import HeisenbergSuite
from shubinlab.suites.intertwine import IntertwineSuite
from shubinlab.suites.ordering import OrderingSuite
from shubinlab.suites.scan import covariance_scan
from shubinlab.suites.shubin import ShubinSuite

logger = logging.getLogger(__name__)

SUITES: Dict[str, Type[Suite]] = {
    suite.name: suite
    for suite in (
        CayleySuite,
        HeisenbergSuite,
        ShubinSuite,
        IntertwineSuite,
        BornJordanSuite,
        OrderingSuite,
    )
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, config: RunConfig) -> Report:
    """Run one named suite, or every suite for "all"

    Raises:
        ShubinLabConfigError: unknown suite name
    """
    if name == "all":
        selected = list(SUITES.values())
    elif name in SUITES:
        selected = [SUITES[name]]
    else:
        raise ShubinLabConfigError(
            f"Unknown suite {name!r}, expected one of {SUITE_NAMES}"
        )
    checks: List[CheckResult] = []
    for suite in selected:
        checks.extend(suite(config).run())
    return Report.build(config, checks)


__all__ = ("SUITES", "SUITE_NAMES", "Suite", "covariance_scan", "run_suite")
