"""Real symplectic linear algebra in the block order z = (x, p)"""
import logging
from typing import Optional, Tuple, Union

import numpy as np
from scipy.linalg import expm

from shubinlab import constants
from shubinlab.exceptions import (
    DimensionError,
    SingularityError,
    SymbolValidationError,
)
from shubinlab.types import RealMatrix

logger = logging.getLogger(__name__)

MatrixLike = Union[float, int, np.ndarray]


def _check_square_even(matrix: np.ndarray) -> int:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"Expected a square matrix, got shape {matrix.shape}")
    size = matrix.shape[0]
    if size % 2:
        raise DimensionError(f"Expected an even dimension, got {size}")
    return size // 2


def symplectic_form(n: int) -> RealMatrix:
    return np.block(
        [
            [np.zeros((n, n)), np.identity(n)],
            [-np.identity(n), np.zeros((n, n))],
        ]
    )


def sigma(z: np.ndarray, z2: np.ndarray) -> float:
    """Symplectic product p.x' - p'.x of two phase-space points"""
    z = np.asarray(z, dtype=float)
    z2 = np.asarray(z2, dtype=float)
    n = z.shape[0] // 2
    return float(z[n:] @ z2[:n] - z2[n:] @ z[:n])


def is_symplectic(matrix: np.ndarray, tol: float = constants.SYMPLECTIC_TOL) -> bool:
    matrix = np.asarray(matrix, dtype=float)
    n = _check_square_even(matrix)
    form = symplectic_form(n)
    defect = matrix.T @ form @ matrix - form
    return bool(np.max(np.abs(defect)) <= tol)


def signature(matrix: np.ndarray) -> int:
    """Number of positive minus number of negative eigenvalues"""
    eigenvalues = np.linalg.eigvalsh(np.atleast_2d(matrix))
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    positive = int(np.sum(eigenvalues > constants.DET_TOL * scale))
    negative = int(np.sum(eigenvalues < -constants.DET_TOL * scale))
    return positive - negative


def _checked_det(matrix: np.ndarray, what: str) -> float:
    determinant = float(np.linalg.det(matrix))
    if abs(determinant) <= constants.DET_TOL:
        raise SingularityError.from_determinant(what, determinant, constants.DET_TOL)
    return determinant


def in_sp0(matrix: np.ndarray, min_det: float = constants.DET_TOL) -> bool:
    n = _check_square_even(np.asarray(matrix))
    return abs(np.linalg.det(matrix - np.identity(2 * n))) > min_det


def cayley(matrix: np.ndarray) -> RealMatrix:
    """Symplectic Cayley transform M(S) = J(S + I)(S - I)^-1 / 2

    Args:
        matrix: S in Sp(2n) with det(S - I) != 0

    Returns:
        symmetric 2n x 2n matrix
    """
    matrix = np.asarray(matrix, dtype=float)
    n = _check_square_even(matrix)
    identity = np.identity(2 * n)
    _checked_det(matrix - identity, "S - I")
    # (S + I)(S - I)^-1 via a transposed solve
    ratio = np.linalg.solve((matrix - identity).T, (matrix + identity).T).T
    result = 0.5 * symplectic_form(n) @ ratio
    return 0.5 * (result + result.T)


def cayley_inverse(cayley_matrix: np.ndarray) -> RealMatrix:
    cayley_matrix = np.asarray(cayley_matrix, dtype=float)
    n = _check_square_even(cayley_matrix)
    half_form = 0.5 * symplectic_form(n)
    _checked_det(cayley_matrix - half_form, "M - J/2")
    return np.linalg.solve(cayley_matrix - half_form, cayley_matrix + half_form)


def cayley_compose(matrix: np.ndarray, matrix2: np.ndarray) -> RealMatrix:
    """Cayley transform of a product from the Cayley transforms of its factors"""
    matrix = np.asarray(matrix, dtype=float)
    matrix2 = np.asarray(matrix2, dtype=float)
    n = _check_square_even(matrix)
    if matrix2.shape != matrix.shape:
        raise DimensionError(f"Shape mismatch: {matrix.shape} vs {matrix2.shape}")
    identity = np.identity(2 * n)
    form = symplectic_form(n)

    _checked_det(matrix @ matrix2 - identity, "S S2 - I")
    cayley1 = cayley(matrix)
    cayley2 = cayley(matrix2)
    total = cayley1 + cayley2
    _checked_det(total, "M(S) + M(S2)")

    left = np.linalg.inv(matrix.T - identity)
    right = np.linalg.inv(matrix - identity)
    result = cayley1 + left @ form @ np.linalg.inv(total) @ form @ right
    return 0.5 * (result + result.T)


def _as_block(value: MatrixLike, n: int, name: str) -> np.ndarray:
    block = np.atleast_2d(np.asarray(value, dtype=float))
    if block.shape == (1, 1) and n > 1:
        block = block[0, 0] * np.identity(n)
    if block.shape != (n, n):
        raise DimensionError(f"{name} must be {n}x{n}, got {block.shape}")
    return block


def generator(kind: str, n: int = 1, param: Optional[MatrixLike] = None) -> RealMatrix:
    """Projection on Sp(2n) of a named metaplectic generator

    Args:
        kind: "J", "V" (chirp, param P symmetric) or "M" (scaling, param L invertible)
        n: dimension parameter
        param: P or L, a scalar is promoted to a multiple of the identity

    Returns:
        J, V_-P = [[I, 0], [P, I]] or M_L = [[L^-1, 0], [0, L^T]]
    """
    kind = kind.upper()
    if kind == "J":
        return symplectic_form(n)

    identity = np.identity(n)
    zero = np.zeros((n, n))
    if kind == "V":
        chirp = _as_block(0.0 if param is None else param, n, "P")
        if not np.allclose(chirp, chirp.T, atol=constants.SYMPLECTIC_TOL):
            raise SymbolValidationError("Chirp matrix P must be symmetric")
        return np.block([[identity, zero], [chirp, identity]])
    if kind == "M":
        scaling = _as_block(1.0 if param is None else param, n, "L")
        if abs(np.linalg.det(scaling)) <= constants.DET_TOL:
            raise SymbolValidationError("Scaling matrix L must be invertible")
        return np.block([[np.linalg.inv(scaling), zero], [zero, scaling.T]])
    raise SymbolValidationError(f"Unknown generator kind {kind!r}")


def rotation(angle: float) -> RealMatrix:
    """Phase-space rotation, equal to J at a quarter turn"""
    cos, sin = np.cos(angle), np.sin(angle)
    return np.array([[cos, sin], [-sin, cos]])


def random_sp0(
    rng: np.random.Generator,
    n: int = 1,
    scale: float = 1.0,
    min_det: float = constants.SP0_REJECT_DET,
    max_tries: int = 1000,
) -> RealMatrix:
    """Draw exp(J H) with H symmetric, entries uniform in [-scale, scale]

    Draws landing too close to the Sp(2n) \\ Sp0 boundary are rejected.
    """
    form = symplectic_form(n)
    for _ in range(max_tries):
        raw = rng.uniform(-scale, scale, size=(2 * n, 2 * n))
        hamiltonian = 0.5 * (raw + raw.T)
        candidate = expm(form @ hamiltonian)
        if in_sp0(candidate, min_det):
            return candidate
        logger.debug("Rejected Sp0 candidate with det(S - I) below %s", min_det)
    raise SingularityError(
        f"No Sp0 element found in {max_tries} draws", what="random_sp0"
    )


def random_rotation_sp0(
    rng: np.random.Generator,
    angle_range: Tuple[float, float] = (np.pi / 4, np.pi / 3),
    spread: float = 0.15,
) -> RealMatrix:
    """Random n=1 element near a rotation, with a bounded Cayley transform

    Sampled kernels of R(S) stay resolvable on the grid for these draws.
    """
    angle = rng.uniform(*angle_range)
    raw = rng.uniform(-spread, spread, size=(2, 2))
    hamiltonian = 0.5 * (raw + raw.T)
    return rotation(angle) @ expm(symplectic_form(1) @ hamiltonian)
