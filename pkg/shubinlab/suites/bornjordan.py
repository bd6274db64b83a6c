import logging
from typing import Iterator, Optional

from shubinlab import utils
from shubinlab.bornjordan import (
    bj_covariance_residual,
    bj_pairing_check,
    bj_weyl_difference,
    op_bj,
    op_bj_quadrature,
    t_bj,
    t_bj_quadrature,
    theta,
    theta_hypotheses,
    theta_invariance,
    wigner_bj,
)
from shubinlab.gridfield import coherent_state, gaussian
from shubinlab.models import CheckResult
from shubinlab.shubin import marginal_residuals
from shubinlab.suites.base import Suite
from shubinlab.symbols import named_symbol

logger = logging.getLogger(__name__)

THETA_POINTS = ((0.5, 0.5), (1.0, 1.0), (-0.75, 1.25), (2.0, 0.5))
GENERATORS = (("J", None), ("M", 2.0), ("M", 3.0), ("V", 1.0))


class BornJordanSuite(Suite):
    """Born-Jordan operators, the Theta factor and reduced metaplectic covariance"""

    name = "bornjordan"

    def checks(self) -> Iterator[CheckResult]:
        yield from self.theta_checks()
        yield from self.operator_checks()
        yield from self.covariance_checks()

    def theta_checks(self) -> Iterator[CheckResult]:
        grid = self.grid
        for z in THETA_POINTS:
            closed = t_bj(z, grid)
            averaged = t_bj_quadrature(z, grid)
            yield CheckResult.contract(
                f"bornjordan.t_bj[{z[0]},{z[1]}]",
                "tau-average of T_tau(z) = Theta(z) T(z)",
                utils.relative_frobenius(closed.entries, averaged.entries),
                1e-10,
            )
        errors = theta_hypotheses(grid, THETA_POINTS)
        best = min(errors, key=errors.get)
        yield CheckResult.contract(
            "bornjordan.theta_hypotheses",
            "Theta(z) = sin(pi p x) / (pi p x) or sin(2 pi p x) / (2 pi p x)",
            errors[best],
            1e-10,
            details={"matched": best, "errors": errors},
        )
        yield CheckResult.contract(
            "bornjordan.theta_zero",
            "Theta vanishes at z = (1, 1)",
            abs(theta((1.0, 1.0))),
            1e-15,
        )

    def operator_checks(self) -> Iterator[CheckResult]:
        grid = self.grid
        f = gaussian(grid)
        g = coherent_state(grid, (0.5, -0.25))
        for label in ("gaussian", "x-gaussian", "xp2-gaussian"):
            a = named_symbol(label)
            operator = op_bj(a, grid)
            yield CheckResult.contract(
                f"bornjordan.quadrature[{label}]",
                "Op_BJ(a) = tau-average of Op_tau(a)",
                utils.relative_frobenius(
                    operator.entries, op_bj_quadrature(a, grid).entries
                ),
                1e-5,
            )
            yield CheckResult.contract(
                f"bornjordan.self_adjoint[{label}]",
                "Op_BJ(a)* = Op_BJ(a) for real a",
                utils.relative_frobenius(operator.adjoint().entries, operator.entries),
                1e-8,
            )
            yield CheckResult.contract(
                f"bornjordan.pairing[{label}]",
                "(Op_BJ(a) f | g) = <a, W_BJ(f, g)>",
                bj_pairing_check(a, f, g),
                1e-6,
            )
        table = wigner_bj(f, f)
        position, momentum = marginal_residuals(table, f)
        yield CheckResult.contract(
            "bornjordan.marginals",
            "p- and x-integrals of W_BJ(f, f) give |f|^2 and |Ff|^2",
            max(position, momentum),
            1e-6,
            details={"position": position, "momentum": momentum},
        )
        yield CheckResult.report(
            "bornjordan.weyl_difference[xp2-gaussian]",
            "Op_BJ(a) differs from Op_W(a) beyond degree 2",
            bj_weyl_difference(named_symbol("xp2-gaussian"), grid),
        )

    def exact_on_grid(self, kind: str, param: Optional[float]) -> bool:
        """J needs a self-dual grid, M(L) needs L = +-2^k to stay on the lattice"""
        if kind == "J":
            return self.grid.is_self_dual
        scale = 1.0 if param is None else float(param)
        return scale.is_integer() and utils.is_power_of_two(abs(int(scale)))

    def covariance_checks(self) -> Iterator[CheckResult]:
        grid = self.grid
        a = named_symbol("xp2-gaussian")
        relation = "S^ Op_BJ(a) = Op_BJ(a o S^-1) S^"
        for kind, param in GENERATORS:
            label = kind if param is None else f"{kind}({param:g})"
            residual = bj_covariance_residual(kind, param, a, grid, self.probes)
            invariance = theta_invariance(kind, param, grid)
            if kind == "V":
                yield CheckResult.witness(
                    f"bornjordan.covariance[{label}]",
                    "chirps break Born-Jordan covariance",
                    residual,
                    1e-2,
                )
                yield CheckResult.witness(
                    f"bornjordan.theta_invariance[{label}]",
                    "chirps do not preserve Theta",
                    invariance,
                    1e-2,
                )
                continue
            if self.exact_on_grid(kind, param):
                yield CheckResult.contract(
                    f"bornjordan.covariance[{label}]", relation, residual, 1e-5
                )
            else:
                logger.info("%s is not exact on %r, reporting only", label, grid)
                yield CheckResult.report(
                    f"bornjordan.covariance[{label}]", relation, residual
                )
            yield CheckResult.contract(
                f"bornjordan.theta_invariance[{label}]",
                "Theta(S^-1 z) = Theta(z)",
                invariance,
                1e-12,
            )
