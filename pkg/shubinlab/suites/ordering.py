import logging
from fractions import Fraction
from math import factorial
from typing import Callable, Iterator, List, Tuple

from shubinlab import utils
from shubinlab.bornjordan import op_bj
from shubinlab.models import CheckResult
from shubinlab.ordering import (
    NCPoly,
    adjoint,
    average_tau,
    beta_closed_form,
    beta_integral,
    normal_order,
    order_bj,
    order_tau,
    order_weyl,
    reflect_tau,
    substitute_tau,
    to_operator,
)
from shubinlab.shubin import polynomial_operator
from shubinlab.suites.base import Suite
from shubinlab.symbols import GaussianSymbol

logger = logging.getLogger(__name__)

MAX_DEGREE = 6
NUMERIC_DEGREE = 2

Identity = Callable[[int, int], bool]


def _failures(
    identity: Identity, max_degree: int = MAX_DEGREE
) -> List[Tuple[int, int]]:
    return [
        (m, l)
        for m in range(max_degree + 1)
        for l in range(max_degree + 1)
        if not identity(m, l)
    ]


class OrderingSuite(Suite):
    """Exact ordering identities, with a numerical cross-check on the grid"""

    name = "ordering"

    def checks(self) -> Iterator[CheckResult]:
        identities = (
            (
                "ordering.tau_half_is_weyl",
                "tau-ordering at tau = 1/2 is Weyl ordering",
                lambda m, l: substitute_tau(order_tau(m, l), Fraction(1, 2))
                == order_weyl(m, l),
            ),
            (
                "ordering.tau_average_is_born_jordan",
                "average of the tau-ordering over [0, 1] is Born-Jordan ordering",
                lambda m, l: average_tau(order_tau(m, l)) == order_bj(m, l),
            ),
            (
                "ordering.weyl_self_adjoint",
                "Weyl-ordered monomials are formally self-adjoint",
                lambda m, l: adjoint(order_weyl(m, l)) == order_weyl(m, l),
            ),
            (
                "ordering.born_jordan_self_adjoint",
                "Born-Jordan-ordered monomials are formally self-adjoint",
                lambda m, l: adjoint(order_bj(m, l)) == order_bj(m, l),
            ),
            (
                "ordering.tau_adjoint_reflects",
                "adjoint of the tau-ordering is the (1 - tau)-ordering",
                lambda m, l: adjoint(order_tau(m, l)) == reflect_tau(order_tau(m, l)),
            ),
        )
        for name, relation, identity in identities:
            failures = _failures(identity)
            yield CheckResult.exact(
                name,
                relation,
                not failures,
                details={
                    "max_degree": MAX_DEGREE,
                    "failures": [list(pair) for pair in failures],
                },
            )

        low = _failures(lambda m, l: m + l > 2 or order_bj(m, l) == order_weyl(m, l))
        yield CheckResult.exact(
            "ordering.born_jordan_is_weyl_low_degree",
            "Born-Jordan and Weyl orderings agree for m + l <= 2",
            not low,
        )
        yield CheckResult.exact(
            "ordering.born_jordan_differs_from_weyl[2,2]",
            "Born-Jordan and Weyl orderings differ for x^2 p^2",
            order_bj(2, 2) != order_weyl(2, 2),
            details={"born_jordan": str(order_bj(2, 2)), "weyl": str(order_weyl(2, 2))},
        )
        commutator = NCPoly.word("PX") - NCPoly.word("XP") + NCPoly.c()
        yield CheckResult.exact(
            "ordering.commutation_ideal",
            "P X - X P + c reduces to zero",
            normal_order(commutator).is_zero(),
        )

        pairs = [(k, l) for l in range(MAX_DEGREE + 1) for k in range(l + 1)]
        yield CheckResult.exact(
            "ordering.beta_integral",
            "int (1 - tau)^k tau^(l-k) dtau = k! (l - k)! / (l + 1)!",
            all(beta_integral(k, l) == beta_closed_form(k, l) for k, l in pairs),
        )
        mismatched = [
            [k, l]
            for k, l in pairs
            if beta_integral(k, l)
            != Fraction(factorial(k) * factorial(l - k), factorial(k + l + 1))
        ]
        yield CheckResult.report(
            "ordering.beta_integral_k_plus_l",
            "int (1 - tau)^k tau^(l-k) dtau = k! (l - k)! / (k + l + 1)!",
            float(len(mismatched)),
            details={"mismatched": mismatched},
        )
        yield from self.numeric_checks()

    def numeric_checks(self) -> Iterator[CheckResult]:
        """Ordered words realized with sampled X and P against the grid operators"""
        grid = self.grid
        phi = self.probes
        for m in range(NUMERIC_DEGREE + 1):
            for l in range(NUMERIC_DEGREE + 1):
                for tau in (0.0, 0.3, 0.5):
                    expected = polynomial_operator(m, l, tau, grid).apply_columns(phi)
                    ordered = to_operator(order_tau(m, l), tau, grid)
                    realized = ordered.apply_columns(phi)
                    yield CheckResult.contract(
                        f"ordering.realized_tau[{m},{l},tau={tau}]",
                        "normal-ordered tau-ordering matches Op_tau(x^m p^l)",
                        utils.relative_frobenius(realized, expected),
                        1e-8,
                    )
                expected = op_bj(GaussianSymbol.monomial(m, l), grid).apply_columns(phi)
                realized = to_operator(order_bj(m, l), 0.0, grid).apply_columns(phi)
                yield CheckResult.contract(
                    f"ordering.realized_born_jordan[{m},{l}]",
                    "normal-ordered Born-Jordan ordering matches Op_BJ(x^m p^l)",
                    utils.relative_frobenius(realized, expected),
                    1e-8,
                )
