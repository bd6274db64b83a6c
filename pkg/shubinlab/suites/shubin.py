import logging
from typing import Dict, Iterator

import numpy as np

from shubinlab import utils
from shubinlab.gridfield import (
    PhaseGrid,
    SampledFunction,
    chirp,
    coherent_state,
    gaussian,
    hermite_function,
)
from shubinlab.heisenberg import composition_phase
from shubinlab.models import CheckResult
from shubinlab.shubin import (
    adjoint_check,
    compose_twisted,
    gaussian_wigner,
    marginal_residuals,
    op_tau_kernel,
    op_tau_twisted,
    pairing_check,
    rihaczek_check,
    rihaczek_form,
    wigner_tau,
)
from shubinlab.suites.base import Suite
from shubinlab.symbols import GaussianSymbol, lattice_delta, named_symbol

logger = logging.getLogger(__name__)

ADJOINT_TAUS = (0.0, 0.3, 0.5)


def adjoint_symbols() -> Dict[str, GaussianSymbol]:
    return {
        "gaussian": named_symbol("gaussian"),
        "x-gaussian": named_symbol("x-gaussian"),
        "xp2-gaussian": named_symbol("xp2-gaussian"),
        "tilted": GaussianSymbol(
            Q=[[1j, 0.3], [0.3, 1.5j]], b=[0.2, -0.1], poly={(0, 1): 1.0, (0, 0): 0.5j}
        ),
    }


class ShubinSuite(Suite):
    """tau-quantization routes, adjoint law, composition and the tau-Wigner transform"""

    name = "shubin"

    def signals(self) -> Dict[str, SampledFunction]:
        return {
            "gaussian": gaussian(self.grid),
            "hermite-1": hermite_function(self.grid, 1),
            "chirp": chirp(self.grid, 0.5),
        }

    def checks(self) -> Iterator[CheckResult]:
        yield from self.wigner_checks()
        yield from self.operator_checks()
        yield from self.composition_checks()

    def wigner_checks(self) -> Iterator[CheckResult]:
        grid = self.grid
        signals = self.signals()
        for tau in self.config.tau_list:
            for label, f in signals.items():
                table = wigner_tau(f, f, tau)
                position, momentum = marginal_residuals(table, f)
                yield CheckResult.contract(
                    f"shubin.marginals[tau={tau},{label}]",
                    "p- and x-integrals of W_tau(f, f) give |f|^2 and |Ff|^2",
                    max(position, momentum),
                    1e-6,
                    details={"position": position, "momentum": momentum},
                )

        f = signals["gaussian"]
        weyl = wigner_tau(f, f, 0.5)
        yield CheckResult.contract(
            "shubin.wigner_gaussian",
            "W(phi0) = 2 exp(-2 pi |z|^2), real",
            utils.relative_frobenius(weyl, gaussian_wigner(grid)),
            1e-8,
            details={"max_imag": utils.max_abs(weyl.imag)},
        )

        g = coherent_state(grid, (0.5, -0.25))
        yield CheckResult.contract(
            "shubin.rihaczek_duality",
            "W_0(f, g) = conj W_1(g, f)",
            rihaczek_check(f, g),
            1e-10,
        )
        yield CheckResult.contract(
            "shubin.rihaczek_closed_form",
            "W_1(f, g)(x, p) = exp(2 pi i x p) Ff(p) conj g(x)",
            utils.relative_frobenius(wigner_tau(f, g, 1.0), rihaczek_form(f, g)),
            1e-8,
        )
        a = named_symbol("gaussian")
        for tau in self.config.tau_list:
            yield CheckResult.contract(
                f"shubin.pairing[tau={tau}]",
                "(Op_tau(a) f | g) = <a, W_tau(f, g)>",
                pairing_check(a, tau, f, g),
                1e-6,
            )

    def operator_checks(self) -> Iterator[CheckResult]:
        grid = self.grid
        for label, a in adjoint_symbols().items():
            for tau in ADJOINT_TAUS:
                yield CheckResult.contract(
                    f"shubin.adjoint[tau={tau},{label}]",
                    "Op_tau(a)* = Op_(1-tau)(conj a)",
                    adjoint_check(a, tau, grid),
                    1e-8,
                )
        a = named_symbol("gaussian")
        for tau in self.config.tau_list:
            kernel = op_tau_kernel(a, tau, grid)
            twisted = op_tau_twisted(a.twisted(grid), tau, grid)
            yield CheckResult.contract(
                f"shubin.routes[tau={tau}]",
                "kernel and twisted-symbol routes give the same Op_tau(a)",
                utils.relative_frobenius(twisted.entries, kernel.entries),
                1e-5,
            )

    def composition_checks(self) -> Iterator[CheckResult]:
        grid = self.grid
        a = named_symbol("gaussian")
        b = GaussianSymbol(Q=2j * np.identity(2), b=[0.3, 0.0])
        a_sigma, b_sigma = a.twisted(grid), b.twisted(grid)
        for tau in self.config.tau_list:
            product = op_tau_twisted(a_sigma, tau, grid) @ op_tau_twisted(
                b_sigma, tau, grid
            )
            c_sigma = compose_twisted(a_sigma, b_sigma, grid, tau)
            composed = op_tau_twisted(c_sigma, tau, grid)
            yield CheckResult.contract(
                f"shubin.composition[tau={tau}]",
                "twisted symbol of Op_tau(a) Op_tau(b) by twisted convolution",
                utils.relative_frobenius(composed.entries, product.entries),
                1e-5,
            )

        z0 = (3 * grid.dx, -2 * grid.dp)
        z1 = (-5 * grid.dx, 4 * grid.dp)
        total = (z0[0] + z1[0], z0[1] + z1[1])
        area = PhaseGrid(grid=grid).cell_area
        for tau in self.config.tau_list:
            composed = compose_twisted(
                lattice_delta(grid, z0), lattice_delta(grid, z1), grid, tau
            )
            phase = np.conj(composition_phase(z0, z1, tau))
            expected = phase * lattice_delta(grid, total)
            yield CheckResult.contract(
                f"shubin.composition_delta[tau={tau}]",
                "delta(z0) # delta(z1) = phase * delta(z0 + z1)",
                area * utils.max_abs(composed - expected),
                1e-12,
            )
