import logging
from typing import Iterator, List, Tuple

import numpy as np

from shubinlab import utils
from shubinlab.gridfield import OperatorMatrix
from shubinlab.heisenberg import (
    commutator_phase,
    composition_phase,
    heisenberg_matrix,
    random_lattice_point,
    tau_phase,
)
from shubinlab.models import CheckResult
from shubinlab.suites.base import Suite

logger = logging.getLogger(__name__)

PAIRS = 50
TOLERANCE = 1e-12


def _relative(actual: OperatorMatrix, expected: OperatorMatrix) -> float:
    difference = utils.max_abs(actual.entries - expected.entries)
    return difference / utils.max_abs(expected.entries)


class HeisenbergSuite(Suite):
    """Commutation, composition, adjoint and tau-phase laws on random lattice pairs"""

    name = "heisenberg"

    def pairs(self) -> List[Tuple[Tuple[float, float], Tuple[float, float]]]:
        return [
            (
                random_lattice_point(self.rng, self.grid),
                random_lattice_point(self.rng, self.grid),
            )
            for _ in range(PAIRS)
        ]

    def checks(self) -> Iterator[CheckResult]:
        grid = self.grid
        pairs = self.pairs()
        for tau in self.config.tau_list:
            commutation, composition, symmetric, adjoint, phase = [], [], [], [], []
            for z0, z1 in pairs:
                T0 = heisenberg_matrix(tau, z0, grid)
                T1 = heisenberg_matrix(tau, z1, grid)
                product = T0 @ T1
                swapped = (T1 @ T0).scaled(commutator_phase(z0, z1))
                commutation.append(_relative(product, swapped))

                total = heisenberg_matrix(tau, np.add(z0, z1), grid)
                composition.append(
                    _relative(product.scaled(composition_phase(z0, z1, tau)), total)
                )
                symmetric.append(
                    _relative(product.scaled(composition_phase(z0, z1, 0.5)), total)
                )

                mirrored = heisenberg_matrix(1 - tau, np.negative(z0), grid)
                adjoint.append(_relative(T0.adjoint(), mirrored))

                weyl = heisenberg_matrix(0.5, z0, grid).scaled(tau_phase(tau, z0))
                phase.append(_relative(T0, weyl))

            details = {"pairs": PAIRS, "tau": tau}
            yield CheckResult.contract(
                f"heisenberg.commutation[tau={tau}]",
                "T(z0) T(z1) = exp(2 pi i sigma(z0, z1)) T(z1) T(z0)",
                max(commutation),
                TOLERANCE,
                details=details,
            )
            yield CheckResult.contract(
                f"heisenberg.composition[tau={tau}]",
                "T(z0 + z1) = exp(-i pi sigma) exp(i pi (2 tau - 1)(p0 x1 + p1 x0)) T(z0) T(z1)",
                max(composition),
                TOLERANCE,
                details=details,
            )
            yield self.weyl_contract(
                f"heisenberg.composition_symmetric_phase[tau={tau}]",
                "T(z0 + z1) = exp(-i pi sigma(z0, z1)) T(z0) T(z1)",
                max(symmetric),
                tau,
                TOLERANCE,
                details=details,
            )
            yield CheckResult.contract(
                f"heisenberg.adjoint[tau={tau}]",
                "T_tau(z)* = T_(1-tau)(-z)",
                max(adjoint),
                TOLERANCE,
                details=details,
            )
            yield CheckResult.contract(
                f"heisenberg.tau_phase[tau={tau}]",
                "T_tau(z) = exp(i pi (2 tau - 1) p x) T(z)",
                max(phase),
                TOLERANCE,
                details=details,
            )