"""Discretized configuration space and phase space

Conventions: hbar = 1/2pi, so every exponential carries 2pi explicitly.
Integrals over the line are Riemann sums weighted by the grid step.
"""
import logging
from typing import Optional, Sequence, Tuple

import attr
import numpy as np
import pandas as pd
from scipy.special import eval_hermite, factorial

from shubinlab import constants, utils
from shubinlab.exceptions import AlignmentError, DimensionError

logger = logging.getLogger(__name__)


@attr.s(auto_attribs=True, repr=False, kw_only=True, frozen=True)
class Grid1D:
    N: int = constants.DEFAULT_N
    L: float = constants.DEFAULT_L

    def __attrs_post_init__(self) -> None:
        if not utils.is_power_of_two(self.N) or self.N < 2:
            raise DimensionError(f"Grid size must be a power of two, got {self.N}")
        if not self.L > 0:
            raise DimensionError(f"Window length must be positive, got {self.L}")

    @classmethod
    def self_dual(cls, N: int = constants.DEFAULT_N) -> "Grid1D":
        return cls(N=N, L=float(np.sqrt(N)))

    @property
    def dx(self) -> float:
        return self.L / self.N

    @property
    def dp(self) -> float:
        return 1.0 / self.L

    @property
    def offsets(self) -> np.ndarray:
        return np.arange(self.N) - self.N // 2

    @property
    def x(self) -> np.ndarray:
        return self.offsets * self.dx

    @property
    def p(self) -> np.ndarray:
        return self.offsets * self.dp

    @property
    def is_self_dual(self) -> bool:
        return bool(np.isclose(self.dx, self.dp, rtol=1e-12, atol=0.0))

    def dual(self) -> "Grid1D":
        """Grid carrying the momentum lattice as its sample points"""
        return Grid1D(N=self.N, L=self.N / self.L)

    def snap(self, x0: float) -> Tuple[int, float]:
        """Index shift realizing x0, with the snapping error

        Raises:
            AlignmentError: x0 is farther than dx/2 from the lattice
        """
        shift = int(np.rint(x0 / self.dx))
        snap_error = abs(x0 - shift * self.dx)
        if snap_error > 0.5 * self.dx:
            raise AlignmentError(
                f"Shift {x0} is not aligned with step {self.dx}", snap_error
            )
        return shift, snap_error

    def interior(self, fraction: float = 0.75) -> np.ndarray:
        """Mask of samples inside the phase-space square shared with the dual grid"""
        half_width = fraction * min(0.5 * self.L, 0.5 * self.N / self.L)
        return np.abs(self.x) <= half_width

    def __repr__(self) -> str:
        return utils.create_repr(self, ["N", "L"])


@attr.s(auto_attribs=True, repr=False, kw_only=True, eq=False)
class SampledFunction:
    grid: Grid1D
    values: np.ndarray = attr.ib(converter=lambda v: np.asarray(v, dtype=complex))

    def __attrs_post_init__(self) -> None:
        if self.values.shape != (self.grid.N,):
            raise DimensionError(
                f"Expected {self.grid.N} samples, got shape {self.values.shape}"
            )
        if not np.all(np.isfinite(self.values)):
            raise DimensionError("Sampled function has non-finite entries")

    def norm(self) -> float:
        return float(np.sqrt(self.grid.dx * np.sum(np.abs(self.values) ** 2)))

    def inner(self, other: "SampledFunction") -> complex:
        """L2 inner product, linear in the first argument"""
        _check_same_grid(self.grid, other.grid)
        return complex(self.grid.dx * np.sum(self.values * np.conj(other.values)))

    def edge_magnitude(self) -> float:
        return max(abs(self.values[0]), abs(self.values[-1]))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"x": self.grid.x, "re": self.values.real, "im": self.values.imag}
        )

    def __repr__(self) -> str:
        return f"SampledFunction(grid={self.grid!r}, norm={self.norm():.6g})"


@attr.s(auto_attribs=True, repr=False, kw_only=True, frozen=True)
class PhaseGrid:
    grid: Grid1D

    @property
    def cell_area(self) -> float:
        return self.grid.dx * self.grid.dp

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """Lattice coordinates, rows indexed by x and columns by p"""
        return np.meshgrid(self.grid.x, self.grid.p, indexing="ij")

    def __repr__(self) -> str:
        return f"PhaseGrid({self.grid!r})"


def _check_same_grid(grid: Grid1D, other: Grid1D) -> None:
    if grid != other:
        raise DimensionError(f"Grid mismatch: {grid!r} vs {other!r}")


def inner(f: SampledFunction, g: SampledFunction) -> complex:
    return f.inner(g)


def norm(f: SampledFunction) -> float:
    return f.norm()


def fourier_matrix(grid: Grid1D) -> np.ndarray:
    """Matrix of the Riemann sum dx * sum_j exp(-2 pi i p_k x_j) f(x_j)"""
    return grid.dx * np.exp(-2j * np.pi * np.outer(grid.p, grid.x))


def fourier(f: SampledFunction) -> SampledFunction:
    """Fourier transform, returned on the dual (momentum) grid"""
    values = fourier_matrix(f.grid) @ f.values
    return SampledFunction(grid=f.grid.dual(), values=values)


def inverse_fourier(f_hat: SampledFunction) -> SampledFunction:
    grid = f_hat.grid.dual()
    matrix = grid.dp * np.exp(2j * np.pi * np.outer(grid.x, grid.p))
    return SampledFunction(grid=grid, values=matrix @ f_hat.values)


def symplectic_fourier(table: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Symplectic Fourier transform of a table on the phase lattice

    a_sigma(x, p) = dx dp sum a(x', p') exp(-2 pi i (p x' - p' x)); rows are
    indexed by x and columns by p on input and output.
    """
    table = np.asarray(table, dtype=complex)
    if table.shape != (grid.N, grid.N):
        raise DimensionError(
            f"Expected a {grid.N}x{grid.N} phase table, got {table.shape}"
        )
    kernel = np.exp(-2j * np.pi * np.outer(grid.p, grid.x))
    return grid.dx * grid.dp * (kernel.conj().T @ (kernel @ table).T)


def interpolation_matrix(grid: Grid1D, points: np.ndarray) -> np.ndarray:
    """Linear map from samples on the grid to band-limited values at `points`"""
    points = np.asarray(points, dtype=float)
    phases = np.exp(2j * np.pi * points[..., None] * grid.p)
    return grid.dp * (phases @ fourier_matrix(grid))


def interpolate(f: SampledFunction, points: np.ndarray) -> np.ndarray:
    """Band-limited evaluation of f at arbitrary points, periodic with period L"""
    return interpolation_matrix(f.grid, points) @ f.values


def gaussian(
    grid: Grid1D, width: float = 1.0, center: float = 0.0, momentum: float = 0.0
) -> SampledFunction:
    """L2-normalized Gaussian (2^1/4 / sqrt(w)) exp(-pi (x - x0)^2 / w^2)"""
    x = grid.x
    values = (
        2 ** 0.25
        / np.sqrt(width)
        * np.exp(-np.pi * (x - center) ** 2 / width ** 2)
        * np.exp(2j * np.pi * momentum * x)
    )
    return SampledFunction(grid=grid, values=values)


def coherent_state(
    grid: Grid1D, z: Sequence[float], width: float = 1.0
) -> SampledFunction:
    """Heisenberg-Weyl translate of the standard Gaussian, evaluated in closed form"""
    x0, p0 = float(z[0]), float(z[1])
    phase = np.exp(2j * np.pi * (p0 * grid.x - 0.5 * p0 * x0))
    values = phase * gaussian(grid, width=width, center=x0).values
    return SampledFunction(grid=grid, values=values)


def hermite_function(grid: Grid1D, k: int) -> SampledFunction:
    scale = 2 ** 0.25 / np.sqrt(2.0 ** k * factorial(k))
    x = grid.x
    values = scale * eval_hermite(k, np.sqrt(2 * np.pi) * x) * np.exp(-np.pi * x ** 2)
    return SampledFunction(grid=grid, values=values)


def chirp(grid: Grid1D, alpha: float, width: float = 1.0) -> SampledFunction:
    base = gaussian(grid, width=width).values
    values = base * np.exp(1j * np.pi * alpha * grid.x ** 2)
    return SampledFunction(grid=grid, values=values)


def two_gaussian(grid: Grid1D, separation: float = 3.0) -> SampledFunction:
    half = 0.5 * separation
    values = gaussian(grid, center=-half).values + gaussian(grid, center=half).values
    result = SampledFunction(grid=grid, values=values)
    return SampledFunction(grid=grid, values=values / result.norm())


def probe_matrix(
    grid: Grid1D, offsets: Optional[Sequence[float]] = None
) -> np.ndarray:
    """Columns are coherent states on the product lattice offsets x offsets"""
    if offsets is None:
        offsets = constants.PROBE_OFFSETS
    columns = [
        coherent_state(grid, (x0, p0)).values for x0 in offsets for p0 in offsets
    ]
    return np.stack(columns, axis=1)


@attr.s(auto_attribs=True, repr=False, kw_only=True, eq=False)
class OperatorMatrix:
    """Dense operator on sampled functions, (A f)_j = dx * sum_k A_jk f_k

    The entries sample the distributional kernel K(x_j, y_k).
    """

    grid: Grid1D
    entries: np.ndarray = attr.ib(converter=lambda v: np.asarray(v, dtype=complex))

    def __attrs_post_init__(self) -> None:
        shape = (self.grid.N, self.grid.N)
        if self.entries.shape != shape:
            raise DimensionError(f"Expected shape {shape}, got {self.entries.shape}")

    @classmethod
    def from_linear_map(cls, grid: Grid1D, matrix: np.ndarray) -> "OperatorMatrix":
        return cls(grid=grid, entries=np.asarray(matrix) / grid.dx)

    @classmethod
    def identity(cls, grid: Grid1D) -> "OperatorMatrix":
        return cls.from_linear_map(grid, np.identity(grid.N))

    @property
    def linear_map(self) -> np.ndarray:
        return self.grid.dx * self.entries

    def apply(self, f: SampledFunction) -> SampledFunction:
        _check_same_grid(self.grid, f.grid)
        return SampledFunction(grid=self.grid, values=self.linear_map @ f.values)

    def apply_columns(self, columns: np.ndarray) -> np.ndarray:
        return self.linear_map @ columns

    def adjoint(self) -> "OperatorMatrix":
        return OperatorMatrix(grid=self.grid, entries=self.entries.conj().T)

    def scaled(self, factor: complex) -> "OperatorMatrix":
        return OperatorMatrix(grid=self.grid, entries=factor * self.entries)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        _check_same_grid(self.grid, other.grid)
        return OperatorMatrix(
            grid=self.grid, entries=self.grid.dx * (self.entries @ other.entries)
        )

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        _check_same_grid(self.grid, other.grid)
        return OperatorMatrix(grid=self.grid, entries=self.entries + other.entries)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        _check_same_grid(self.grid, other.grid)
        return OperatorMatrix(grid=self.grid, entries=self.entries - other.entries)

    def to_frame(self) -> pd.DataFrame:
        """Kernel samples in long form, one row per (x, y)"""
        x, y = np.meshgrid(self.grid.x, self.grid.x, indexing="ij")
        return pd.DataFrame(
            {
                "x": x.ravel(),
                "y": y.ravel(),
                "re": self.entries.real.ravel(),
                "im": self.entries.imag.ravel(),
            }
        )

    def __repr__(self) -> str:
        return f"OperatorMatrix(grid={self.grid!r})"


def multiplication_operator(grid: Grid1D, values: np.ndarray) -> OperatorMatrix:
    diagonal = np.diag(np.asarray(values, dtype=complex))
    return OperatorMatrix.from_linear_map(grid, diagonal)


def momentum_power(grid: Grid1D, power: int) -> OperatorMatrix:
    """P^m = ((2 pi i)^-1 d/dx)^m realized as the Fourier multiplier p^m

    The unpaired Nyquist mode is dropped for odd powers.
    """
    multiplier = grid.p.astype(complex) ** power
    if power % 2:
        multiplier[0] = 0.0
    forward = fourier_matrix(grid)
    backward = grid.dp * np.exp(2j * np.pi * np.outer(grid.x, grid.p))
    linear_map = backward @ (multiplier[:, None] * forward)
    return OperatorMatrix.from_linear_map(grid, linear_map)
