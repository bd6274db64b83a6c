import logging
from typing import Iterator

import numpy as np

from shubinlab import utils
from shubinlab.exceptions import SingularityError
from shubinlab.models import CheckResult
from shubinlab.suites.base import Suite
from shubinlab.sympcore import (
    cayley,
    cayley_compose,
    cayley_inverse,
    generator,
    is_symplectic,
    random_sp0,
    symplectic_form,
)

logger = logging.getLogger(__name__)

SAMPLES = 20


def _defect(matrix: np.ndarray) -> float:
    form = symplectic_form(matrix.shape[0] // 2)
    return utils.max_abs(matrix.T @ form @ matrix - form)


class CayleySuite(Suite):
    name = "cayley"

    def checks(self) -> Iterator[CheckResult]:
        J = generator("J")
        yield CheckResult.contract(
            "cayley.of_J",
            "M(J) = I/2",
            utils.max_abs(cayley(J) - 0.5 * np.identity(2)),
            1e-12,
        )

        samples = [random_sp0(self.rng) for _ in range(SAMPLES)]
        roundtrip = max(utils.max_abs(cayley_inverse(cayley(S)) - S) for S in samples)
        yield CheckResult.contract(
            "cayley.roundtrip",
            "cayley_inverse(M(S)) = S",
            roundtrip,
            1e-10,
            details={"samples": SAMPLES},
        )
        inverse = max(
            utils.max_abs(cayley(np.linalg.inv(S)) + cayley(S)) for S in samples
        )
        yield CheckResult.contract(
            "cayley.inverse",
            "M(S^-1) = -M(S)",
            inverse,
            1e-10,
            details={"samples": SAMPLES},
        )

        residuals = []
        skipped = 0
        for S, S2 in zip(samples[::2], samples[1::2]):
            try:
                composed = cayley_compose(S, S2)
            except SingularityError as e:
                logger.info("Skipping pair outside the composition domain: %s", e)
                skipped += 1
                continue
            residuals.append(utils.max_abs(composed - cayley(S @ S2)))
        yield CheckResult.contract(
            "cayley.compose",
            "M(S S2) from M(S) and M(S2)",
            max(residuals, default=float("nan")),
            1e-9,
            details={"pairs": len(residuals), "skipped": skipped},
        )

        for label, matrix in (
            ("J", J),
            ("V(1)", generator("V", param=1.0)),
            ("M(2)", generator("M", param=2.0)),
            ("sample", samples[0]),
        ):
            yield CheckResult.contract(
                f"cayley.symplectic[{label}]",
                "S^T J S = J",
                _defect(matrix),
                1e-12,
                details={"is_symplectic": is_symplectic(matrix)},
            )
        # lower block L^2 instead of L^T
        squared_block = np.array([[0.5, 0.0], [0.0, 4.0]])
        yield CheckResult.witness(
            "cayley.symplectic[M(2),squared-block]",
            "diag(1/L, L^2) is not symplectic",
            _defect(squared_block),
            1e-2,
        )
