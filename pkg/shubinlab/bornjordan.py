"""Born-Jordan quantization

Op_BJ(a) is the tau-average of Op_tau(a) over [0, 1]. Equivalently it is the Weyl
operator with twisted symbol a_sigma * Theta, where Theta(z) = sin(pi p x) / (pi p x)
is the tau-average of the phase linking T_tau(z) to T(z).
"""
import logging
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from shubinlab import constants, utils
from shubinlab.exceptions import SymbolValidationError
from shubinlab.gridfield import (
    Grid1D,
    OperatorMatrix,
    PhaseGrid,
    SampledFunction,
    interpolation_matrix,
    momentum_power,
    probe_matrix,
)
from shubinlab.heisenberg import heisenberg_matrix
from shubinlab.shubin import op_tau_kernel, op_tau_twisted, wigner_tau
from shubinlab.symbols import GaussianSymbol, SymbolSpec
from shubinlab.sympcore import generator

logger = logging.getLogger(__name__)

THETA_FORMS = ("half", "full")


def _sinc(argument: np.ndarray) -> np.ndarray:
    """sin(pi t) / (pi t), with the Taylor expansion near t = 0"""
    argument = np.asarray(argument, dtype=float)
    scaled = np.pi * argument
    taylor = 1 - scaled ** 2 / 6 + scaled ** 4 / 120
    return np.where(
        np.abs(argument) < constants.TAYLOR_THRESHOLD, taylor, np.sinc(argument)
    )


def theta_values(x: np.ndarray, p: np.ndarray, form: str = "half") -> np.ndarray:
    """Theta on arrays; form "full" gives sin(2 pi p x) / (2 pi p x)"""
    if form == "half":
        return _sinc(np.multiply(p, x))
    if form == "full":
        return _sinc(2 * np.multiply(p, x))
    raise SymbolValidationError(f"Unknown Theta form {form!r}, expected {THETA_FORMS}")


def theta(z: Sequence[float]) -> float:
    return float(theta_values(z[0], z[1]))


def theta_table(grid: Grid1D, form: str = "half") -> np.ndarray:
    x, p = PhaseGrid(grid=grid).mesh()
    return theta_values(x, p, form)


def tau_nodes(
    nodes: int = constants.GAUSS_LEGENDRE_NODES,
) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]"""
    points, weights = leggauss(nodes)
    return 0.5 * (points + 1), 0.5 * weights


def t_bj(z: Sequence[float], grid: Grid1D) -> OperatorMatrix:
    """T_BJ(z) = Theta(z) T(z)"""
    return heisenberg_matrix(0.5, z, grid).scaled(theta(z))


def t_bj_quadrature(
    z: Sequence[float], grid: Grid1D, nodes: int = constants.T_BJ_QUADRATURE_NODES
) -> OperatorMatrix:
    taus, weights = tau_nodes(nodes)
    entries = sum(
        weight * heisenberg_matrix(tau, z, grid).entries
        for tau, weight in zip(taus, weights)
    )
    return OperatorMatrix(grid=grid, entries=entries)


def theta_hypotheses(
    grid: Grid1D,
    points: Sequence[Tuple[float, float]],
    nodes: int = constants.T_BJ_QUADRATURE_NODES,
) -> Dict[str, float]:
    """Max deviation of each Theta form from the tau-averaged Heisenberg operators"""
    measured = []
    for z in points:
        plain = heisenberg_matrix(0.5, z, grid).entries
        averaged = t_bj_quadrature(z, grid, nodes).entries
        measured.append(utils.best_phase(plain, averaged))
    xs = np.array([z[0] for z in points])
    ps = np.array([z[1] for z in points])
    return {
        form: utils.max_abs(np.asarray(measured) - theta_values(xs, ps, form))
        for form in THETA_FORMS
    }


def _bj_polynomial_operator(a: GaussianSymbol, grid: Grid1D) -> OperatorMatrix:
    # the tau-average of Op_tau(x^m p^l) weighs every X^k P^l X^(m-k) by 1/(m+1)
    scale = np.exp(a.c)
    result = np.zeros((grid.N, grid.N), dtype=complex)
    for (m, l), coeff in a.poly.items():
        momentum = momentum_power(grid, l).linear_map
        for k in range(m + 1):
            left = grid.x ** k
            right = grid.x ** (m - k)
            term = left[:, None] * momentum * right[None, :]
            result += coeff * scale / (m + 1) * term
    return OperatorMatrix.from_linear_map(grid, result)


def op_bj(a: SymbolSpec, grid: Grid1D) -> OperatorMatrix:
    """Weyl operator with twisted symbol a_sigma * Theta

    Pure polynomial symbols are averaged over tau in closed form.
    """
    if isinstance(a, GaussianSymbol) and a.is_polynomial:
        return _bj_polynomial_operator(a, grid)
    twisted = a.twisted(grid) * theta_table(grid)
    return op_tau_twisted(twisted, 0.5, grid)


def op_bj_quadrature(
    a: GaussianSymbol, grid: Grid1D, nodes: int = constants.GAUSS_LEGENDRE_NODES
) -> OperatorMatrix:
    """Gauss-Legendre average of op_tau_kernel over tau in [0, 1]"""
    taus, weights = tau_nodes(nodes)
    entries = sum(
        weight * op_tau_kernel(a, tau, grid).entries
        for tau, weight in zip(taus, weights)
    )
    return OperatorMatrix(grid=grid, entries=entries)


def wigner_bj(
    f: SampledFunction, g: SampledFunction, nodes: int = constants.GAUSS_LEGENDRE_NODES
) -> np.ndarray:
    taus, weights = tau_nodes(nodes)
    return sum(weight * wigner_tau(f, g, tau) for tau, weight in zip(taus, weights))


def bj_pairing(
    a: SymbolSpec,
    f: SampledFunction,
    g: SampledFunction,
    nodes: int = constants.GAUSS_LEGENDRE_NODES,
) -> Tuple[complex, complex]:
    grid = f.grid
    left = op_bj(a, grid).apply(f).inner(g)
    table = a.tabulate(grid)
    area = PhaseGrid(grid=grid).cell_area
    right = complex(area * np.sum(table * wigner_bj(f, g, nodes)))
    return left, right


def bj_pairing_check(
    a: SymbolSpec,
    f: SampledFunction,
    g: SampledFunction,
    nodes: int = constants.GAUSS_LEGENDRE_NODES,
) -> float:
    left, right = bj_pairing(a, f, g, nodes)
    if abs(left) < 1e-12:
        return abs(left - right)
    return abs(left - right) / abs(left)


def _scaling_matrix(scale: float, grid: Grid1D) -> np.ndarray:
    """Linear map f -> sqrt|L| f(L x) on the grid

    Integer powers of two map the lattice into itself and give a sparse map.
    Any other nonzero L goes through band-limited interpolation. Samples mapped
    outside the window are zero in both cases.
    """
    if scale == 0:
        raise SymbolValidationError("Scaling L must be nonzero")
    magnitude = np.sqrt(abs(scale))
    if scale == int(scale) and utils.is_power_of_two(abs(int(scale))):
        source = int(scale) * grid.offsets + grid.N // 2
        inside = (source >= 0) & (source < grid.N)
        matrix = np.zeros((grid.N, grid.N))
        matrix[np.flatnonzero(inside), source[inside]] = magnitude
        logger.debug("Dyadic scaling by %g keeps %d samples", scale, int(inside.sum()))
        return matrix
    points = scale * grid.x
    inside = (points >= -grid.L / 2) & (points < grid.L / 2)
    logger.debug(
        "Scaling by %g through band-limited interpolation keeps %d samples",
        scale,
        int(inside.sum()),
    )
    return magnitude * inside[:, None] * interpolation_matrix(grid, points)


def metaplectic_generator(
    kind: str, param: Optional[float], grid: Grid1D
) -> Tuple[OperatorMatrix, np.ndarray]:
    """Metaplectic generator on the grid with its projection on Sp(2, R)

    J -> exp(i pi / 4) F, M(L) -> sqrt|L| f(L x), V(P) -> exp(i pi P x^2) f.
    """
    kind = kind.upper()
    x = grid.x
    if kind == "J":
        entries = constants.EIGHTH_TURN * np.exp(-2j * np.pi * np.outer(x, x))
        return OperatorMatrix(grid=grid, entries=entries), generator("J")
    if kind == "M":
        scale = 1.0 if param is None else float(param)
        matrix = _scaling_matrix(scale, grid)
        return OperatorMatrix.from_linear_map(grid, matrix), generator("M", param=scale)
    if kind == "V":
        chirp = 0.0 if param is None else float(param)
        matrix = np.diag(np.exp(1j * np.pi * chirp * x ** 2))
        return OperatorMatrix.from_linear_map(grid, matrix), generator("V", param=chirp)
    raise SymbolValidationError(f"Unknown generator kind {kind!r}")


def bj_covariance_residual(
    kind: str,
    param: Optional[float],
    a: GaussianSymbol,
    grid: Grid1D,
    probes: Optional[np.ndarray] = None,
) -> float:
    """Probe residual of S^ Op_BJ(a) = Op_BJ(a o S^-1) S^"""
    operator, projection = metaplectic_generator(kind, param, grid)
    phi = probe_matrix(grid) if probes is None else probes
    moved = a.compose(np.linalg.inv(projection))
    left = operator.apply_columns(op_bj(a, grid).apply_columns(phi))
    right = op_bj(moved, grid).apply_columns(operator.apply_columns(phi))
    return utils.relative_frobenius(right, left)


def theta_invariance(kind: str, param: Optional[float], grid: Grid1D) -> float:
    """max over the lattice of |Theta(S^-1 z) - Theta(z)|"""
    kind = kind.upper()
    if kind == "M":
        projection = generator("M", param=1.0 if param is None else param)
    elif kind == "V":
        projection = generator("V", param=0.0 if param is None else param)
    else:
        projection = generator(kind)
    x, p = PhaseGrid(grid=grid).mesh()
    inverse = np.linalg.inv(projection)
    moved_x = inverse[0, 0] * x + inverse[0, 1] * p
    moved_p = inverse[1, 0] * x + inverse[1, 1] * p
    return utils.max_abs(theta_values(moved_x, moved_p) - theta_values(x, p))


def bj_weyl_difference(a: GaussianSymbol, grid: Grid1D) -> float:
    """Relative distance between Op_BJ(a) and the Weyl operator of a"""
    weyl = op_tau_kernel(a, 0.5, grid)
    return utils.relative_frobenius(op_bj(a, grid).entries, weyl.entries)

