import itertools
import logging
from typing import Any, Dict, Iterator, List, Tuple

import numpy as np

from shubinlab import utils
from shubinlab.exceptions import AlignmentError, SingularityError
from shubinlab.gridfield import coherent_state, gaussian
from shubinlab.heisenberg import random_lattice_point
from shubinlab.intertwine import (
    IntertwinerSpec,
    build_R,
    cocycle_check,
    fresnel,
    fresnel_quadrature,
    inverse_adjoint_check,
    intertwine_residual,
    kernel_hypotheses,
    parity_dilation,
    symbol_chain_check,
    unitarity_defect_of_J,
    unitarity_profile,
    wigner_covariance_check,
)
from shubinlab.models import CheckResult
from shubinlab.suites.base import Suite, is_weyl
from shubinlab.symbols import named_symbol
from shubinlab.sympcore import generator, random_rotation_sp0
from shubinlab.types import CovarianceResult

logger = logging.getLogger(__name__)

INTERTWINE_TAUS = (0.0, 0.3, 0.5, 0.7, 1.0)
RANDOM_SAMPLES = 3
COCYCLE_PAIRS = 10
TOLERANCE = 1e-5
NOT_SELF_DUAL = "grid is not self-dual"

FRESNEL_CASES = (
    (2.0, 0.3),
    (-1.5, 0.2),
    ([[2.0, 0.5], [0.5, 1.0]], [0.1, 0.2]),
    ([[-1.0, 0.2], [0.2, -2.0]], [0.3, 0.0]),
    ([[1.0, 0.0], [0.0, -1.0]], [0.2, 0.1]),
)


def _lookup_details(result: CovarianceResult) -> Dict[str, Any]:
    return {
        "excluded_fraction": result["excluded_fraction"],
        "on_lattice": result["on_lattice"],
    }


class IntertwineSuite(Suite):
    """Intertwiners R_tau(S): intertwining, adjoint links, cocycle, covariance"""

    name = "intertwine"

    def samples(self) -> Dict[str, np.ndarray]:
        matrices = {"J": generator("J"), "-I": -np.identity(2)}
        for index in range(RANDOM_SAMPLES):
            matrices[f"S{index}"] = random_rotation_sp0(self.rng)
        return matrices

    def checks(self) -> Iterator[CheckResult]:
        samples = self.samples()
        sampled = itertools.chain(
            self.intertwining_checks(samples),
            self.link_checks(samples),
            self.cocycle_checks(),
            self.covariance_checks(samples),
        )
        if self.grid.is_self_dual:
            yield from sampled
        else:
            # exp(-2 pi i x y) aliases unless dx = dp
            logger.warning(
                "%r is not self-dual, intertwiner checks are reported only", self.grid
            )
            for result in sampled:
                yield self.demoted(result, NOT_SELF_DUAL)
        yield from self.kernel_checks()

    def intertwining_checks(
        self, samples: Dict[str, np.ndarray]
    ) -> Iterator[CheckResult]:
        grid = self.grid
        relation = "R_tau(S) Op_tau(a) = Op_tau(a o S^-1) R_tau(S)"
        for label, S in samples.items():
            for tau in INTERTWINE_TAUS:
                for symbol in ("gaussian", "x-gaussian"):
                    name = f"intertwine.residual[{label},tau={tau},{symbol}]"
                    a = named_symbol(symbol)
                    yield self.guarded(
                        name,
                        relation,
                        lambda: self.weyl_contract(
                            name,
                            relation,
                            intertwine_residual(S, tau, a, grid, probes=self.probes),
                            tau,
                            TOLERANCE,
                        ),
                        expected=(SingularityError,),
                    )
        a = named_symbol("x-gaussian")
        yield CheckResult.report(
            "intertwine.residual_direct[J,tau=0.5,x-gaussian]",
            "R(S) Op(a) = Op(a o S) R(S)",
            intertwine_residual(
                samples["J"], 0.5, a, grid, direct=True, probes=self.probes
            ),
        )

        z_points = [random_lattice_point(self.rng, grid, reach=12) for _ in range(3)]
        relation = "R_tau(S) T_tau(z) = T_tau(S z) R_tau(S)"
        for label in ("J", "-I"):
            for tau in INTERTWINE_TAUS:
                name = f"intertwine.heisenberg_chain[{label},tau={tau}]"
                S = samples[label]
                yield self.guarded(
                    name,
                    relation,
                    lambda: self.weyl_contract(
                        name,
                        relation,
                        max(
                            symbol_chain_check(S, tau, z, grid, self.probes)
                            for z in z_points
                        ),
                        tau,
                        TOLERANCE,
                    ),
                    expected=(SingularityError, AlignmentError),
                )

    def link_checks(self, samples: Dict[str, np.ndarray]) -> Iterator[CheckResult]:
        grid = self.grid
        for label, S in samples.items():
            degenerate = IntertwinerSpec(S=S).is_degenerate
            for tau in INTERTWINE_TAUS:
                name = f"intertwine.links[{label},tau={tau}]"
                try:
                    result = inverse_adjoint_check(S, tau, grid, self.probes)
                except SingularityError as e:
                    yield self.skipped(name, "R_tau(S) exists", e)
                    continue
                yield self.weyl_contract(
                    f"intertwine.inverse[{label},tau={tau}]",
                    "R_tau(S^-1) R_tau(S) = I",
                    result["inv_residual"],
                    tau,
                    TOLERANCE,
                )
                adjoint_relation = "R_tau(S^-1) = R_(1-tau)(S)*"
                if degenerate and not is_weyl(tau):
                    # band-limited delta kernels are not closed under transposition
                    yield CheckResult.report(
                        f"intertwine.adjoint_link[{label},tau={tau}]",
                        adjoint_relation,
                        result["adj_residual"],
                    )
                else:
                    yield CheckResult.contract(
                        f"intertwine.adjoint_link[{label},tau={tau}]",
                        adjoint_relation,
                        result["adj_residual"],
                        TOLERANCE,
                    )
                yield self.weyl_contract(
                    f"intertwine.unitarity[{label},tau={tau}]",
                    "R_tau(S)* R_tau(S) = I",
                    result["unitarity_defect"],
                    tau,
                    TOLERANCE,
                )

        J = samples["J"]
        profile, argmin = unitarity_profile(J, INTERTWINE_TAUS, grid)
        yield CheckResult.exact(
            "intertwine.unitarity_argmin[J]",
            "the unitarity defect of R_tau(J) is smallest at tau = 1/2",
            is_weyl(argmin),
            details={"profile": [list(item) for item in profile]},
        )
        for tau, measured in profile:
            yield CheckResult.contract(
                f"intertwine.unitarity_defect[J,tau={tau}]",
                "defect of R_tau(J) = |2 / (1 + 4 tau (1 - tau)) - 1|",
                abs(measured - unitarity_defect_of_J(tau)),
                1e-3,
                details={"measured": measured},
            )
        yield CheckResult.witness(
            "intertwine.nonunitary[J,tau=0.3]",
            "R_0.3(J) is not unitary",
            dict(profile)[0.3],
            1e-2,
        )

        minus = samples["-I"]
        f = coherent_state(grid, (0.5, 0.25))
        for tau in INTERTWINE_TAUS:
            name = f"intertwine.parity_dilation[tau={tau}]"
            relation = "R_tau(-I) f(x) = f(-tau x / (1 - tau)) / (2 |1 - tau|)"
            yield self.guarded(
                name,
                relation,
                lambda: CheckResult.contract(
                    name,
                    relation,
                    utils.relative_frobenius(
                        build_R(minus, tau, grid).apply(f).values,
                        parity_dilation(f, tau).values,
                    ),
                    1e-6,
                ),
                expected=(SingularityError,),
            )

    def cocycle_pairs(self) -> List[Tuple[str, np.ndarray, np.ndarray]]:
        J = generator("J")
        pairs = [("J,J", J, J)]
        for index in range(COCYCLE_PAIRS - 1):
            pairs.append(
                (
                    f"P{index}",
                    random_rotation_sp0(self.rng),
                    random_rotation_sp0(self.rng),
                )
            )
        return pairs

    def cocycle_checks(self) -> Iterator[CheckResult]:
        grid = self.grid
        relation = "R(S S2) = lambda R(S) R(S2), |lambda| = 1"
        for label, S, S2 in self.cocycle_pairs():
            name = f"intertwine.cocycle[{label}]"
            try:
                result = cocycle_check(S, S2, 0.5, grid, TOLERANCE, self.probes)
            except SingularityError as e:
                yield self.skipped(name, relation, e)
                continue
            yield CheckResult.contract(
                name,
                relation,
                max(result["residual"], result["modulus_defect"]),
                TOLERANCE,
                phase=result["phase_measured"],
                details={
                    "matches": list(result["matches"]),
                    "residual": result["residual"],
                    "modulus_defect": result["modulus_defect"],
                },
            )
        J = generator("J")
        result = cocycle_check(J, J, 0.3, grid, TOLERANCE, self.probes)
        yield CheckResult.report(
            "intertwine.cocycle[J,J,tau=0.3]",
            "R_tau(S S2) = lambda R_tau(S) R_tau(S2)",
            result["residual"],
            phase=result["phase_measured"],
            details={"matches": list(result["matches"])},
        )

    def covariance_checks(
        self, samples: Dict[str, np.ndarray]
    ) -> Iterator[CheckResult]:
        grid = self.grid
        f = gaussian(grid)
        g = coherent_state(grid, (0.5, -0.25))
        relation = "W_tau(R_tau(S) f, R_(1-tau)(S) g)(z) = W_tau(f, g)(S^-1 z)"
        for label in ("J", "S0", "S1"):
            for tau in (0.5, 0.3):
                result = wigner_covariance_check(samples[label], tau, f, g)
                yield self.weyl_contract(
                    f"intertwine.wigner_covariance[{label},tau={tau}]",
                    relation,
                    result["residual"],
                    tau,
                    1e-3,
                    details=_lookup_details(result),
                )
        cases = (("-I", samples["-I"], g), ("J,f=g", samples["J"], f))
        for label, S, second in cases:
            result = wigner_covariance_check(S, 0.5, f, second)
            yield CheckResult.contract(
                f"intertwine.wigner_covariance[{label},tau=0.5]",
                relation,
                result["residual"],
                1e-6,
                details=_lookup_details(result),
            )

    def kernel_checks(self) -> Iterator[CheckResult]:
        for index, (X, u) in enumerate(FRESNEL_CASES):
            closed = fresnel(X, u)
            yield CheckResult.contract(
                f"intertwine.fresnel[{index}]",
                "closed-form Fresnel integral against damped quadrature",
                abs(closed - fresnel_quadrature(X, u)),
                1e-6,
                details={
                    "X": np.atleast_2d(X).tolist(),
                    "u": np.atleast_1d(u).tolist(),
                },
            )
        yield CheckResult.contract(
            "intertwine.fresnel[identity]",
            "Fresnel integral with X = I, u = (1, 0) equals -i",
            abs(fresnel(np.identity(2), [1.0, 0.0]) + 1j),
            1e-12,
        )
        for tau in (0.3, 0.7):
            errors = kernel_hypotheses(tau)
            best = min(errors, key=errors.get)
            yield CheckResult.contract(
                f"intertwine.kernel_hypotheses[tau={tau}]",
                "closed form of the R_tau(J) kernel against quadrature",
                errors[best],
                TOLERANCE,
                details={"matched": best, "errors": errors},
            )
