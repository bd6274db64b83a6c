import logging
from typing import Any, Callable, ClassVar, Iterator, List, Optional, Tuple, Type

import numpy as np

from shubinlab.exceptions import ShubinLabError
from shubinlab.gridfield import Grid1D, probe_matrix
from shubinlab.models import CheckResult, Expectation, RunConfig

logger = logging.getLogger(__name__)

WEYL_TAU = 0.5


def is_weyl(tau: float) -> bool:
    return abs(tau - WEYL_TAU) <= 1e-12


class Suite:
    """Named group of checks run against one RunConfig

    Subclasses implement `checks`; every random draw goes through `self.rng`,
    seeded from the config.
    """

    name: ClassVar[str] = ""

    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self.grid: Grid1D = config.grid
        self.rng = np.random.default_rng(config.seed)
        self._probes: Optional[np.ndarray] = None

    @property
    def probes(self) -> np.ndarray:
        if self._probes is None:
            self._probes = probe_matrix(self.grid)
        return self._probes

    def checks(self) -> Iterator[CheckResult]:
        raise NotImplementedError

    def run(self) -> List[CheckResult]:
        logger.info("Running suite %r on %r", self.name, self.grid)
        results = list(self.checks())
        failed = sum(not result.passed for result in results)
        logger.info("Suite %r: %d checks, %d failed", self.name, len(results), failed)
        return results

    @staticmethod
    def weyl_contract(
        name: str,
        relation: str,
        residual: float,
        tau: float,
        tolerance: float,
        **kwargs: Any,
    ) -> CheckResult:
        """Contract at tau = 1/2, measurement elsewhere"""
        if is_weyl(tau):
            return CheckResult.contract(name, relation, residual, tolerance, **kwargs)
        return CheckResult.report(name, relation, residual, **kwargs)

    @staticmethod
    def guarded(
        name: str,
        relation: str,
        measure: Callable[[], CheckResult],
        expected: Tuple[Type[ShubinLabError], ...] = (),
    ) -> CheckResult:
        """Run `measure`, turning library errors into results

        Errors listed in `expected` are reported; any other library error fails
        the check.
        """
        try:
            return measure()
        except expected as e:
            return Suite.skipped(name, relation, e)
        except ShubinLabError as e:
            logger.warning("%s failed: %s", name, e)
            return CheckResult(
                name=name,
                relation=relation,
                residual=float("nan"),
                passed=False,
                details={"error": type(e).__name__, "message": str(e)},
            )

    @staticmethod
    def skipped(name: str, relation: str, error: ShubinLabError) -> CheckResult:
        """Report for a check whose operator does not exist, e.g. outside Sp0"""
        logger.info("%s: %s", name, error)
        return CheckResult.report(
            name,
            relation,
            float("nan"),
            details={"error": type(error).__name__, "message": str(error)},
        )

    @staticmethod
    def demoted(result: CheckResult, reason: str) -> CheckResult:
        """Same measurement as a report, for checks the grid cannot support"""
        details = dict(result.details, demoted=reason)
        if result.expectation != Expectation.REPORT.value:
            details["expectation"] = result.expectation
        return CheckResult.report(
            result.name,
            result.relation,
            result.residual,
            phase=result.phase,
            details=details,
        )
