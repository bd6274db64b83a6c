"""Shubin tau-quantization Op_tau(a) and the tau-Wigner transform

Two independent routes build Op_tau(a): the kernel route integrates
exp(2 pi i p (x - y)) a(tau x + (1 - tau) y, p) over p, the twisted route sums
a_sigma(z) T_tau(z) over the phase lattice.
"""
import logging
from math import comb
from typing import Optional, Tuple

import numpy as np

from shubinlab import constants, utils
from shubinlab.exceptions import AccuracyError, DimensionError, SymbolValidationError
from shubinlab.gridfield import (
    Grid1D,
    OperatorMatrix,
    PhaseGrid,
    SampledFunction,
    fourier,
    fourier_matrix,
    momentum_power,
    multiplication_operator,
)
from shubinlab.symbols import GaussianSymbol, SymbolSpec, TabulatedSymbol

logger = logging.getLogger(__name__)


def check_tau(tau: float) -> bool:
    """True when tau carries an accuracy contract"""
    if 0.0 <= tau <= 1.0:
        return True
    logger.warning("tau = %s lies outside [0, 1]: no accuracy contract", tau)
    return False


def polynomial_operator(m: int, l: int, tau: float, grid: Grid1D) -> OperatorMatrix:
    """Op_tau(x^m p^l) = sum_k C(m, k) tau^k (1 - tau)^(m - k) X^k P^l X^(m - k)"""
    momentum = momentum_power(grid, l).linear_map
    result = np.zeros((grid.N, grid.N), dtype=complex)
    for k in range(m + 1):
        weight = comb(m, k) * tau ** k * (1 - tau) ** (m - k)
        if weight == 0:
            continue
        left = grid.x ** k
        right = grid.x ** (m - k)
        result += weight * (left[:, None] * momentum * right[None, :])
    return OperatorMatrix.from_linear_map(grid, result)


def _polynomial_symbol_operator(
    a: GaussianSymbol, tau: float, grid: Grid1D
) -> OperatorMatrix:
    scale = np.exp(a.c)
    entries = np.zeros((grid.N, grid.N), dtype=complex)
    for (i, j), coeff in a.poly.items():
        entries += coeff * scale * polynomial_operator(i, j, tau, grid).entries
    return OperatorMatrix(grid=grid, entries=entries)


def op_tau_kernel(
    a: GaussianSymbol,
    tau: float,
    grid: Grid1D,
    p_max: float = constants.DEFAULT_P_MAX,
    p_nodes: int = constants.DEFAULT_P_NODES,
) -> OperatorMatrix:
    """Op_tau(a) from its kernel K(x, y) = int exp(2 pi i p (x - y)) a(tau x + (1 - tau) y, p) dp

    Polynomial symbols are realized exactly with Fourier-multiplier momentum
    powers; decaying symbols use trapezoidal quadrature over [-p_max, p_max].

    Raises:
        AccuracyError: the integrand does not decay at +-p_max
    """
    if not isinstance(a, GaussianSymbol):
        raise SymbolValidationError("The kernel route needs a closed-form symbol")
    check_tau(tau)
    if a.is_polynomial:
        return _polynomial_symbol_operator(a, tau, grid)

    x = grid.x
    midpoint = tau * x[:, None] + (1 - tau) * x[None, :]
    difference = x[:, None] - x[None, :]

    boundary = max(
        utils.max_abs(a.evaluate(midpoint, p_max)),
        utils.max_abs(a.evaluate(midpoint, -p_max)),
    )
    if boundary > constants.NONDECAY_LIMIT:
        raise AccuracyError(
            f"Symbol does not decay at p = +-{p_max}",
            boundary,
            constants.NONDECAY_LIMIT,
        )

    nodes = np.linspace(-p_max, p_max, p_nodes)
    weights = np.full(p_nodes, nodes[1] - nodes[0])
    weights[[0, -1]] *= 0.5
    logger.debug(
        "Kernel quadrature: tau=%s, %d nodes on [-%s, %s]", tau, p_nodes, p_max, p_max
    )
    kernel = np.zeros((grid.N, grid.N), dtype=complex)
    for chunk in utils.grouper(range(p_nodes), constants.P_CHUNK, cast=list):
        p = nodes[chunk][:, None, None]
        values = a.evaluate(midpoint[None, :, :], p)
        phases = np.exp(2j * np.pi * p * difference[None, :, :])
        kernel += np.tensordot(weights[chunk], values * phases, axes=1)
    return OperatorMatrix(grid=grid, entries=kernel)


def op_tau_twisted(a_sigma: np.ndarray, tau: float, grid: Grid1D) -> OperatorMatrix:
    """Op_tau from a twisted symbol tabulated on the phase lattice

    A = sum_{jk} a_sigma(x_j, p_k) T_tau(x_j, p_k) dx dp, with periodic shifts.
    """
    a_sigma = np.asarray(a_sigma, dtype=complex)
    if a_sigma.shape != (grid.N, grid.N):
        raise DimensionError(
            f"Expected a {grid.N}x{grid.N} twisted symbol, got {a_sigma.shape}"
        )
    check_tau(tau)
    x, p = grid.x, grid.p
    # coefficients indexed by (momentum k, shift s)
    weights = grid.dp * a_sigma.T * np.exp(-2j * np.pi * (1 - tau) * np.outer(p, x))
    modulation = np.exp(2j * np.pi * np.outer(x, p))
    by_shift = modulation @ weights

    rows = np.arange(grid.N)[:, None]
    columns = (rows - grid.offsets[None, :]) % grid.N
    entries = np.zeros((grid.N, grid.N), dtype=complex)
    entries[np.broadcast_to(rows, columns.shape), columns] = by_shift
    return OperatorMatrix(grid=grid, entries=entries)


def quantize(a: SymbolSpec, tau: float, grid: Grid1D) -> OperatorMatrix:
    """Kernel route for closed-form symbols, twisted route for tabulated ones"""
    if isinstance(a, TabulatedSymbol):
        return op_tau_twisted(a.twisted(grid), tau, grid)
    return op_tau_kernel(a, tau, grid)


def adjoint_check(a: GaussianSymbol, tau: float, grid: Grid1D) -> float:
    """||Op_tau(a)* - Op_(1-tau)(conj a)||_F / ||Op_tau(a)||_F"""
    operator = op_tau_kernel(a, tau, grid)
    mirrored = op_tau_kernel(a.conjugate(), 1 - tau, grid)
    return utils.relative_frobenius(operator.adjoint().entries, mirrored.entries)


def _edge_mass(table: np.ndarray) -> float:
    edges = np.concatenate([table[0], table[-1], table[:, 0], table[:, -1]])
    return utils.max_abs(edges)


def compose_twisted(
    a_sigma: np.ndarray, b_sigma: np.ndarray, grid: Grid1D, tau: float = 0.5
) -> np.ndarray:
    """Twisted symbol of Op_tau(a) Op_tau(b)

    c(z) = sum_z' exp(-2 pi i [tau p'(x - x') - (1 - tau)(p - p') x']) a(z - z') b(z') dx dp,
    periodic on the lattice. The exponential equals exp(i pi sigma(z, z')) at tau = 1/2.

    Raises:
        AccuracyError: a table does not vanish on the lattice boundary
    """
    a_sigma = np.asarray(a_sigma, dtype=complex)
    b_sigma = np.asarray(b_sigma, dtype=complex)
    for name, table in (("a_sigma", a_sigma), ("b_sigma", b_sigma)):
        if table.shape != (grid.N, grid.N):
            raise DimensionError(f"{name} has shape {table.shape}")
        peak = utils.max_abs(table)
        edge = _edge_mass(table)
        if peak and edge > constants.EDGE_LIMIT * peak:
            raise AccuracyError(
                f"{name} is not edge-decayed", edge / peak, constants.EDGE_LIMIT
            )

    N = grid.N
    half = N // 2
    x, p = grid.x, grid.p
    # a with its momentum axis indexed by offset, transformed along momentum
    a_hat = np.fft.fft(np.roll(a_sigma, -half, axis=1), axis=1)
    modulation = np.exp(-2j * np.pi * tau * np.outer(x, p))
    result = np.zeros((N, N), dtype=complex)
    for row in range(N):
        if not np.any(b_sigma[row]):
            continue
        x_prime = x[row]
        weighted = (
            modulation
            * np.exp(2j * np.pi * (2 * tau - 1) * p * x_prime)[None, :]
            * b_sigma[row][None, :]
        )
        rows = (np.arange(N) - row + half) % N
        convolved = np.fft.ifft(a_hat[rows] * np.fft.fft(weighted, axis=1), axis=1)
        result += np.exp(2j * np.pi * (1 - tau) * p * x_prime)[None, :] * convolved
    return grid.dx * grid.dp * result


def _interpolation_coefficients(f: SampledFunction) -> np.ndarray:
    return f.grid.dp * (fourier_matrix(f.grid) @ f.values)


def wigner_tau(f: SampledFunction, g: SampledFunction, tau: float) -> np.ndarray:
    """Cross tau-Wigner table, rows indexed by x and columns by p

    W(x, p) = int exp(-2 pi i y p) f(x + tau y) conj g(x - (1 - tau) y) dy. Off-grid
    values come from band-limited interpolation, so f and g are treated as L-periodic.
    """
    grid = f.grid
    if g.grid != grid:
        raise DimensionError(f"Grid mismatch: {grid!r} vs {g.grid!r}")
    check_tau(tau)
    x, p = grid.x, grid.p
    y = grid.x

    def shifted(h: SampledFunction, scale: float) -> np.ndarray:
        # h(x_j + scale * y_m) for all (j, m)
        coefficients = _interpolation_coefficients(h)
        at_x = np.exp(2j * np.pi * np.outer(x, p)) * coefficients[None, :]
        at_y = np.exp(2j * np.pi * scale * np.outer(y, p))
        return at_x @ at_y.T

    product = shifted(f, tau) * np.conj(shifted(g, -(1 - tau)))
    transform = np.exp(-2j * np.pi * np.outer(y, p))
    return grid.dx * (product @ transform)


def marginal_residuals(
    table: np.ndarray, f: SampledFunction, g: Optional[SampledFunction] = None
) -> Tuple[float, float]:
    """Relative L1 residuals of the position and momentum marginals"""
    if g is None:
        g = f
    grid = f.grid
    position = grid.dp * np.sum(table, axis=1)
    momentum = grid.dx * np.sum(table, axis=0)
    expected_position = f.values * np.conj(g.values)
    expected_momentum = fourier(f).values * np.conj(fourier(g).values)

    def relative_l1(actual: np.ndarray, expected: np.ndarray) -> float:
        scale = np.sum(np.abs(expected))
        distance = np.sum(np.abs(actual - expected))
        return float(distance / scale) if scale else float(distance)

    return (
        relative_l1(position, expected_position),
        relative_l1(momentum, expected_momentum),
    )


def pairing(
    a: SymbolSpec, f: SampledFunction, g: SampledFunction, tau: float
) -> Tuple[complex, complex]:
    """Both sides of (Op_tau(a) f | g) = sum a(z) W_tau(f, g)(z) dx dp

    The phase-space side pairs a with W_tau(f, g) bilinearly, without conjugation.
    """
    grid = f.grid
    operator = quantize(a, tau, grid)
    left = operator.apply(f).inner(g)
    table = a.tabulate(grid)
    right = complex(
        PhaseGrid(grid=grid).cell_area * np.sum(table * wigner_tau(f, g, tau))
    )
    return left, right


def pairing_check(
    a: SymbolSpec, tau: float, f: SampledFunction, g: SampledFunction
) -> float:
    left, right = pairing(a, f, g, tau)
    if abs(left) < 1e-12:
        logger.debug("Pairing is near zero, reporting the absolute residual")
        return abs(left - right)
    return abs(left - right) / abs(left)


def rihaczek_check(f: SampledFunction, g: SampledFunction) -> float:
    """Relative max distance between W_0(f, g) and conj W_1(g, f)"""
    dual = wigner_tau(f, g, 0.0)
    rihaczek = wigner_tau(g, f, 1.0)
    return utils.max_abs(dual - np.conj(rihaczek)) / utils.max_abs(dual)


def rihaczek_form(f: SampledFunction, g: SampledFunction) -> np.ndarray:
    """Closed form of W_1(f, g): exp(2 pi i x p) Ff(p) conj g(x)"""
    grid = f.grid
    phases = np.exp(2j * np.pi * np.outer(grid.x, grid.p))
    return phases * fourier(f).values[None, :] * np.conj(g.values)[:, None]


def gaussian_wigner(grid: Grid1D) -> np.ndarray:
    """Wigner table of the standard Gaussian, 2 exp(-2 pi (x^2 + p^2))"""
    x, p = PhaseGrid(grid=grid).mesh()
    return 2.0 * np.exp(-2 * np.pi * (x ** 2 + p ** 2))


def position_operator(grid: Grid1D) -> OperatorMatrix:
    return multiplication_operator(grid, grid.x)
