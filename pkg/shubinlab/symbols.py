"""Phase-space symbols: a closed-form Gaussian-chirp family and tabulated grids

A closed-form symbol is a(z) = poly(z) * exp(i pi Qz.z + 2 pi i b.z + c) with z = (x, p).
"""
import logging
from math import comb
from typing import Dict, Optional, Tuple, Union

import attr
import numpy as np

from shubinlab import utils
from shubinlab.exceptions import DimensionError, SymbolValidationError
from shubinlab.gridfield import Grid1D, PhaseGrid, symplectic_fourier
from shubinlab.types import PolyCoeffs

logger = logging.getLogger(__name__)

MAX_POLY_DEGREE = 4


def _as_poly(poly: Optional[Dict[Tuple[int, int], complex]]) -> PolyCoeffs:
    if poly is None:
        return {(0, 0): 1.0 + 0j}
    return {
        (int(i), int(j)): complex(coeff) for (i, j), coeff in poly.items() if coeff != 0
    }


def _poly_mul(left: PolyCoeffs, right: PolyCoeffs) -> PolyCoeffs:
    result: PolyCoeffs = {}
    for (i, j), a in left.items():
        for (k, m), b in right.items():
            key = (i + k, j + m)
            result[key] = result.get(key, 0j) + a * b
    return result


def _linear_power(alpha: float, beta: float, power: int) -> PolyCoeffs:
    """(alpha x + beta p)^power"""
    return {
        (r, power - r): comb(power, r) * alpha ** r * beta ** (power - r) + 0j
        for r in range(power + 1)
    }


def _poly_substitute(poly: PolyCoeffs, matrix: np.ndarray) -> PolyCoeffs:
    """poly(S z) as a polynomial in z"""
    result: PolyCoeffs = {}
    for (i, j), coeff in poly.items():
        x_part = _linear_power(matrix[0, 0], matrix[0, 1], i)
        p_part = _linear_power(matrix[1, 0], matrix[1, 1], j)
        for key, value in _poly_mul(x_part, p_part).items():
            result[key] = result.get(key, 0j) + coeff * value
    return {key: value for key, value in result.items() if abs(value) > 1e-15}


@attr.s(auto_attribs=True, repr=False, kw_only=True, frozen=True, eq=False)
class GaussianSymbol:
    Q: np.ndarray = attr.ib(
        factory=lambda: np.zeros((2, 2), dtype=complex),
        converter=lambda v: np.asarray(v, dtype=complex),
    )
    b: np.ndarray = attr.ib(
        factory=lambda: np.zeros(2, dtype=complex),
        converter=lambda v: np.asarray(v, dtype=complex),
    )
    c: complex = 0j
    poly: PolyCoeffs = attr.ib(default=None, converter=_as_poly)

    def __attrs_post_init__(self) -> None:
        if self.Q.shape != (2, 2) or self.b.shape != (2,):
            raise DimensionError("Closed-form symbols need a 2x2 Q and a 2-vector b")
        if not np.allclose(self.Q, self.Q.T, atol=1e-12):
            raise SymbolValidationError("Quadratic form Q must be symmetric")
        if self.degree > MAX_POLY_DEGREE:
            raise SymbolValidationError(
                f"Polynomial degree {self.degree} exceeds {MAX_POLY_DEGREE}"
            )
        if not self.is_polynomial:
            imaginary = np.linalg.eigvalsh(0.5 * (self.Q.imag + self.Q.imag.T))
            if np.min(imaginary) < -1e-12:
                raise SymbolValidationError("Im(Q) must be positive semidefinite")

    @classmethod
    def standard(cls, scale: complex = 1.0) -> "GaussianSymbol":
        """scale * exp(-pi |z|^2), its own symplectic Fourier transform"""
        return cls(Q=1j * np.identity(2), poly={(0, 0): scale})

    @classmethod
    def monomial(cls, m: int, l: int, coeff: complex = 1.0) -> "GaussianSymbol":
        return cls(poly={(m, l): coeff})

    @classmethod
    def damped(
        cls, poly: Dict[Tuple[int, int], complex], width: float = 1.0
    ) -> "GaussianSymbol":
        return cls(Q=1j * np.identity(2) / width ** 2, poly=poly)

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self.poly), default=0)

    @property
    def is_polynomial(self) -> bool:
        """Pure polynomial symbols have no Gaussian damping"""
        return not np.any(self.Q) and not np.any(self.b)

    def evaluate(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        p = np.asarray(p, dtype=float)
        quadratic = (
            self.Q[0, 0] * x * x + 2 * self.Q[0, 1] * x * p + self.Q[1, 1] * p * p
        )
        exponent = 1j * np.pi * quadratic + 2j * np.pi * (self.b[0] * x + self.b[1] * p)
        envelope = np.exp(exponent + self.c)
        polynomial = np.zeros(np.broadcast(x, p).shape, dtype=complex)
        for (i, j), coeff in self.poly.items():
            polynomial = polynomial + coeff * x ** i * p ** j
        return polynomial * envelope

    def __call__(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        return self.evaluate(x, p)

    def compose(self, matrix: np.ndarray) -> "GaussianSymbol":
        """The symbol z -> a(S z)"""
        matrix = np.asarray(matrix, dtype=float)
        if matrix.shape != (2, 2):
            raise DimensionError(f"Expected a 2x2 matrix, got {matrix.shape}")
        return GaussianSymbol(
            Q=matrix.T @ self.Q @ matrix,
            b=matrix.T @ self.b,
            c=self.c,
            poly=_poly_substitute(self.poly, matrix),
        )

    def conjugate(self) -> "GaussianSymbol":
        return GaussianSymbol(
            Q=-np.conj(self.Q),
            b=-np.conj(self.b),
            c=np.conj(self.c),
            poly={key: np.conj(value) for key, value in self.poly.items()},
        )

    def tabulate(self, grid: Grid1D) -> np.ndarray:
        x, p = PhaseGrid(grid=grid).mesh()
        return self.evaluate(x, p)

    def twisted(self, grid: Grid1D) -> np.ndarray:
        return symplectic_fourier(self.tabulate(grid), grid)

    def __repr__(self) -> str:
        return utils.create_repr(self, ["poly", "c"])


@attr.s(auto_attribs=True, repr=False, kw_only=True, eq=False)
class TabulatedSymbol:
    grid: Grid1D
    table: np.ndarray = attr.ib(converter=lambda v: np.asarray(v, dtype=complex))

    def __attrs_post_init__(self) -> None:
        shape = (self.grid.N, self.grid.N)
        if self.table.shape != shape:
            raise DimensionError(f"Expected a {shape} table, got {self.table.shape}")
        if not np.all(np.isfinite(self.table)):
            raise SymbolValidationError("Tabulated symbol has non-finite entries")

    def tabulate(self, grid: Grid1D) -> np.ndarray:
        if grid != self.grid:
            raise DimensionError(f"Symbol is tabulated on {self.grid!r}, not {grid!r}")
        return self.table

    def twisted(self, grid: Grid1D) -> np.ndarray:
        return symplectic_fourier(self.tabulate(grid), grid)

    def conjugate(self) -> "TabulatedSymbol":
        return TabulatedSymbol(grid=self.grid, table=np.conj(self.table))

    def __repr__(self) -> str:
        return f"TabulatedSymbol(grid={self.grid!r})"


SymbolSpec = Union[GaussianSymbol, TabulatedSymbol]


def lattice_delta(grid: Grid1D, z0: Tuple[float, float] = (0.0, 0.0)) -> np.ndarray:
    """Twisted-symbol table of unit mass concentrated at the lattice point nearest z0"""
    table = np.zeros((grid.N, grid.N), dtype=complex)
    row = int(np.rint(z0[0] / grid.dx)) + grid.N // 2
    column = int(np.rint(z0[1] / grid.dp)) + grid.N // 2
    if not (0 <= row < grid.N and 0 <= column < grid.N):
        raise DimensionError(f"Point {z0} lies outside the phase lattice")
    table[row, column] = 1.0 / (grid.dx * grid.dp)
    return table


NAMED_SYMBOLS = {
    "gaussian": lambda: GaussianSymbol.standard(),
    "x": lambda: GaussianSymbol.monomial(1, 0),
    "p": lambda: GaussianSymbol.monomial(0, 1),
    "xp": lambda: GaussianSymbol.monomial(1, 1),
    "xp2": lambda: GaussianSymbol.monomial(1, 2),
    "x-gaussian": lambda: GaussianSymbol.damped({(1, 0): 1.0}),
    "xp2-gaussian": lambda: GaussianSymbol.damped({(1, 2): 1.0}),
}


def named_symbol(name: str) -> GaussianSymbol:
    try:
        return NAMED_SYMBOLS[name]()
    except KeyError:
        raise SymbolValidationError(
            f"Unknown symbol {name!r}, expected one of {sorted(NAMED_SYMBOLS)}"
        ) from None
