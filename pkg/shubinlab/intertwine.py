"""Intertwining operators R_tau(S) for S in Sp0(2, R)

R_tau(S) = int s_sigma(z) T_tau(z) dz with s_sigma(z) = |det(S - I)|^-1/2 exp(i pi M(S)z.z).
The twisted symbol never decays, so operators are built from the closed-form kernel
obtained by Fresnel integration in p.
"""
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import attr
import numpy as np
from scipy.integrate import trapezoid
from scipy.interpolate import RegularGridInterpolator

from shubinlab import constants, utils
from shubinlab.exceptions import AlignmentError, DimensionError, SingularityError
from shubinlab.gridfield import (
    Grid1D,
    OperatorMatrix,
    PhaseGrid,
    SampledFunction,
    interpolate,
    probe_matrix,
)
from shubinlab.heisenberg import HeisenbergOp
from shubinlab.shubin import op_tau_kernel, wigner_tau
from shubinlab.symbols import GaussianSymbol
from shubinlab.sympcore import cayley, cayley_compose, signature
from shubinlab.types import CocycleResult, CovarianceResult, InverseAdjointResult

logger = logging.getLogger(__name__)

# relative size of m22 below which the p-integral collapses to a delta
DEGENERATE_BLOCK = 1e-12


@attr.s(auto_attribs=True, repr=False, kw_only=True, frozen=True, eq=False)
class IntertwinerSpec:
    S: np.ndarray = attr.ib(converter=lambda v: np.asarray(v, dtype=float))
    tau: float = 0.5
    M: np.ndarray = attr.ib(init=False)
    normalization: float = attr.ib(init=False)

    def __attrs_post_init__(self) -> None:
        if self.S.shape != (2, 2):
            raise DimensionError(
                f"Intertwiners are built for n = 1, got {self.S.shape}"
            )
        # cayley raises SingularityError outside Sp0
        object.__setattr__(self, "M", cayley(self.S))
        determinant = np.linalg.det(self.S - np.identity(2))
        object.__setattr__(self, "normalization", abs(determinant) ** -0.5)

    @property
    def is_degenerate(self) -> bool:
        scale = max(1.0, utils.max_abs(self.M))
        return abs(self.M[1, 1]) <= DEGENERATE_BLOCK * scale

    def __repr__(self) -> str:
        return f"IntertwinerSpec(S={self.S.tolist()!r}, tau={self.tau!r})"


def fresnel(X: np.ndarray, u: np.ndarray) -> complex:
    """int exp(-2 pi i u.v) exp(i pi Xv.v) dv = |det X|^-1/2 exp(i pi sign(X) / 4) exp(-i pi X^-1 u.u)

    Raises:
        SingularityError: X is singular
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if X.shape != (u.shape[0], u.shape[0]):
        raise DimensionError(f"Shapes {X.shape} and {u.shape} do not match")
    determinant = float(np.linalg.det(X))
    if abs(determinant) <= constants.DET_TOL:
        raise SingularityError.from_determinant("X", determinant, constants.DET_TOL)
    quadratic = float(u @ np.linalg.solve(X, u))
    phase = np.pi / 4 * signature(X) - np.pi * quadratic
    return complex(abs(determinant) ** -0.5 * np.exp(1j * phase))


def _damped_fresnel_1d(eigenvalue: float, shift: float, epsilon: float) -> complex:
    reach = np.sqrt(constants.FRESNEL_TAIL / epsilon)
    step = 1.0 / (4 * (abs(eigenvalue) * reach + abs(shift) + 1))
    v = np.linspace(-reach, reach, 2 * int(np.ceil(reach / step)) + 1)
    integrand = np.exp(
        -2j * np.pi * shift * v + 1j * np.pi * eigenvalue * v * v - epsilon * v * v
    )
    return complex(trapezoid(integrand, v))


def fresnel_quadrature(
    X: np.ndarray,
    u: np.ndarray,
    epsilons: Sequence[float] = constants.FRESNEL_EPSILONS,
) -> complex:
    """Damped trapezoidal quadrature of the Fresnel integral, extrapolated to zero damping"""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    u = np.atleast_1d(np.asarray(u, dtype=float))
    eigenvalues, vectors = np.linalg.eigh(X)
    shifts = vectors.T @ u
    values = []
    for epsilon in epsilons:
        product = 1.0 + 0j
        for eigenvalue, shift in zip(eigenvalues, shifts):
            product *= _damped_fresnel_1d(eigenvalue, shift, epsilon)
        values.append(product)
    values_array = np.asarray(values)
    degree = len(epsilons) - 1
    real = np.polyval(np.polyfit(epsilons, values_array.real, degree), 0.0)
    imag = np.polyval(np.polyfit(epsilons, values_array.imag, degree), 0.0)
    return complex(real, imag)


def _degenerate_kernel(spec: IntertwinerSpec, grid: Grid1D) -> np.ndarray:
    """m22 = 0: the p-integral is delta((tau + m12) x + (1 - tau - m12) y)"""
    (m11, m12), _ = spec.M
    slope_x = spec.tau + m12
    slope_y = 1 - spec.tau - m12
    if abs(slope_y) <= constants.DET_TOL:
        raise SingularityError(
            f"R_tau(S) has no kernel at tau = {spec.tau}: the delta does not depend on y",
            determinant=slope_y,
            what="1 - tau - m12",
        )
    logger.warning(
        "Degenerate Fresnel block for S = %s, realizing the delta on the grid",
        spec.S.tolist(),
    )
    x, p = grid.x, grid.p
    target = -slope_x * x / slope_y
    # band-limited grid delta centered at target
    delta = grid.dp * (
        np.exp(2j * np.pi * np.outer(target, p)) @ np.exp(-2j * np.pi * np.outer(p, x))
    )
    chirp = np.exp(1j * np.pi * m11 * (x - target) ** 2)
    return spec.normalization / abs(slope_y) * chirp[:, None] * delta


def build_R(S: np.ndarray, tau: float, grid: Grid1D) -> OperatorMatrix:
    """R_tau(S) from K(x, y) = int exp(2 pi i p w) s_sigma(x - y, p) dp, w = tau x + (1 - tau) y

    Raises:
        SingularityError: S is outside Sp0, or the degenerate kernel does not exist
    """
    spec = IntertwinerSpec(S=S, tau=tau)
    logger.debug("Building %r on %r", spec, grid)
    if spec.is_degenerate:
        return OperatorMatrix(grid=grid, entries=_degenerate_kernel(spec, grid))

    (m11, m12), (_, m22) = spec.M
    x = grid.x
    u = x[:, None] - x[None, :]
    w = spec.tau * x[:, None] + (1 - spec.tau) * x[None, :]
    prefactor = spec.normalization * fresnel(m22, 0.0)
    kernel = prefactor * np.exp(
        1j * np.pi * m11 * u * u - 1j * np.pi * (m12 * u + w) ** 2 / m22
    )
    return OperatorMatrix(grid=grid, entries=kernel)


def metaplectic_R(S: np.ndarray, grid: Grid1D) -> OperatorMatrix:
    """R_1/2(S), metaplectic up to the unresolved factor i^nu(S)"""
    return build_R(S, 0.5, grid)


def _probes(grid: Grid1D, probes: Optional[np.ndarray]) -> np.ndarray:
    return probe_matrix(grid) if probes is None else probes


def intertwine_residual(
    S: np.ndarray,
    tau: float,
    a: GaussianSymbol,
    grid: Grid1D,
    direct: bool = False,
    probes: Optional[np.ndarray] = None,
) -> float:
    """Probe residual of R_tau(S) Op_tau(a) = Op_tau(a o S^-1) R_tau(S)

    With direct=True the right side uses a o S instead.
    """
    S = np.asarray(S, dtype=float)
    phi = _probes(grid, probes)
    moved = a.compose(S if direct else np.linalg.inv(S))
    R = build_R(S, tau, grid)
    left = R.apply_columns(op_tau_kernel(a, tau, grid).apply_columns(phi))
    right = op_tau_kernel(moved, tau, grid).apply_columns(R.apply_columns(phi))
    return utils.relative_frobenius(right, left)


def cocycle_candidates(S: np.ndarray, S2: np.ndarray) -> Dict[str, complex]:
    product_sign = signature(cayley(S @ S2))
    sum_sign = signature(cayley(S) + cayley(S2))
    return {
        "product_signature": complex(np.exp(1j * np.pi / 4 * product_sign)),
        "sum_signature": complex(np.exp(1j * np.pi / 4 * sum_sign)),
        "sum_signature_conjugate": complex(np.exp(-1j * np.pi / 4 * sum_sign)),
    }


def cocycle_check(
    S: np.ndarray,
    S2: np.ndarray,
    tau: float,
    grid: Grid1D,
    tolerance: float = 1e-5,
    probes: Optional[np.ndarray] = None,
) -> CocycleResult:
    """Measure lambda in R_tau(S S2) = lambda R_tau(S) R_tau(S2)

    lambda is the least-squares scalar on the probe images; it is compared with
    every candidate phase and all matches are reported.
    """
    S = np.asarray(S, dtype=float)
    S2 = np.asarray(S2, dtype=float)
    # raises SingularityError unless S, S2, S S2 in Sp0 and M + M2 invertible
    cayley_compose(S, S2)
    phi = _probes(grid, probes)
    inner = build_R(S2, tau, grid).apply_columns(phi)
    product = build_R(S, tau, grid).apply_columns(inner)
    direct = build_R(S @ S2, tau, grid).apply_columns(phi)
    phase = utils.best_phase(product, direct)
    residual = utils.relative_frobenius(phase * product, direct)

    candidates = cocycle_candidates(S, S2)
    matches = tuple(
        sorted(
            name
            for name, value in candidates.items()
            if abs(value - phase) <= tolerance
        )
    )
    if not matches:
        logger.warning(
            "Measured cocycle phase %s matches no candidate %s", phase, candidates
        )
    return {
        "phase_measured": phase,
        "phase_predicted": candidates["product_signature"],
        "residual": residual,
        "modulus_defect": abs(abs(phase) - 1.0),
        "matches": matches,
    }


def inverse_adjoint_check(
    S: np.ndarray, tau: float, grid: Grid1D, probes: Optional[np.ndarray] = None
) -> InverseAdjointResult:
    """Links of R_tau(S^-1) = R_tau(S)^-1 = R_(1-tau)(S)*

    All three are probe residuals.
    """
    S = np.asarray(S, dtype=float)
    phi = _probes(grid, probes)
    R = build_R(S, tau, grid)
    inverse = build_R(np.linalg.inv(S), tau, grid)
    mirrored = build_R(S, 1 - tau, grid)
    image = R.apply_columns(phi)
    return {
        "inv_residual": utils.relative_frobenius(inverse.apply_columns(image), phi),
        "adj_residual": utils.relative_frobenius(
            mirrored.adjoint().apply_columns(phi), inverse.apply_columns(phi)
        ),
        "unitarity_defect": utils.relative_frobenius(
            R.adjoint().apply_columns(image), phi
        ),
    }


def unitarity_defect_of_J(tau: float) -> float:
    """|2 / beta - 1| with beta = 1 + 4 tau (1 - tau): R_tau(J)* R_tau(J) = (2 / beta) I"""
    beta = 1 + 4 * tau * (1 - tau)
    return abs(2 / beta - 1)


def unitarity_profile(
    S: np.ndarray, taus: Iterable[float], grid: Grid1D
) -> Tuple[List[Tuple[float, float]], float]:
    """Unitarity defect of R_tau(S) per tau, with the minimizing tau"""
    profile = [
        (tau, inverse_adjoint_check(S, tau, grid)["unitarity_defect"]) for tau in taus
    ]
    argmin = min(profile, key=lambda item: item[1])[0]
    return profile, argmin


def parity_dilation(f: SampledFunction, tau: float) -> SampledFunction:
    """R_tau(-I) f(x) = f(-tau x / (1 - tau)) / (2 |1 - tau|)"""
    if abs(1 - tau) <= constants.DET_TOL:
        raise SingularityError("R_1(-I) has a distributional kernel", what="1 - tau")
    points = -tau * f.grid.x / (1 - tau)
    values = interpolate(f, points) / (2 * abs(1 - tau))
    return SampledFunction(grid=f.grid, values=values)


def _aligned(grid: Grid1D, z: np.ndarray, tau: float) -> HeisenbergOp:
    shift, snap_error = grid.snap(float(z[0]))
    if snap_error > 1e-9 * grid.dx:
        raise AlignmentError(
            f"Point {tuple(z)} is not on the position lattice", snap_error
        )
    return HeisenbergOp(z0=(shift * grid.dx, float(z[1])), grid=grid, tau=tau)


def symbol_chain_check(
    S: np.ndarray,
    tau: float,
    z: Sequence[float],
    grid: Grid1D,
    probes: Optional[np.ndarray] = None,
) -> float:
    """Probe residual of R_tau(S) T_tau(z) = T_tau(S z) R_tau(S)

    Raises:
        AlignmentError: z or S z has an off-lattice position
    """
    S = np.asarray(S, dtype=float)
    z = np.asarray(z, dtype=float)
    before = _aligned(grid, z, tau)
    after = _aligned(grid, S @ z, tau)
    phi = _probes(grid, probes)
    R = build_R(S, tau, grid)
    left = R.apply_columns(before.matrix().apply_columns(phi))
    right = after.matrix().apply_columns(R.apply_columns(phi))
    return utils.relative_frobenius(right, left)


def _lattice_lookup(
    table: np.ndarray, points: np.ndarray, grid: Grid1D
) -> Optional[np.ndarray]:
    """Table values at `points` when they all sit on the lattice, NaN outside it"""
    coords = points / np.array([grid.dx, grid.dp])
    indices = np.rint(coords)
    if not np.allclose(coords, indices, rtol=0.0, atol=1e-9):
        return None
    indices = indices.astype(int) + grid.N // 2
    valid = np.all((indices >= 0) & (indices < grid.N), axis=1)
    values = np.full(len(points), np.nan, dtype=complex)
    values[valid] = table[indices[valid, 0], indices[valid, 1]]
    return values


def _cubic_lookup(table: np.ndarray, points: np.ndarray, grid: Grid1D) -> np.ndarray:
    lookup = [
        RegularGridInterpolator(
            (grid.x, grid.p),
            part,
            method="cubic",
            bounds_error=False,
            fill_value=np.nan,
        )
        for part in (table.real, table.imag)
    ]
    return lookup[0](points) + 1j * lookup[1](points)


def wigner_covariance_check(
    S: np.ndarray,
    tau: float,
    f: SampledFunction,
    g: SampledFunction,
    fraction: float = 0.75,
) -> CovarianceResult:
    """Compare W_tau(R_tau(S) f, R_(1-tau)(S) g)(z) with W_tau(f, g)(S^-1 z)

    Interior lattice points only. When S^-1 maps the lattice into itself the
    reference is read off the table, otherwise it is interpolated with cubic
    splines; points mapped outside the lattice are excluded.
    """
    S = np.asarray(S, dtype=float)
    grid = f.grid
    reference = wigner_tau(f, g, tau)
    moved_f = build_R(S, tau, grid).apply(f)
    moved_g = build_R(S, 1 - tau, grid).apply(g)
    table = wigner_tau(moved_f, moved_g, tau)

    x, p = PhaseGrid(grid=grid).mesh()
    inside = grid.interior(fraction)
    mask = inside[:, None] & inside[None, :]
    points = np.stack([x[mask], p[mask]], axis=1) @ np.linalg.inv(S).T

    expected = _lattice_lookup(reference, points, grid)
    on_lattice = expected is not None
    if expected is None:
        expected = _cubic_lookup(reference, points, grid)
    valid = np.isfinite(expected)
    excluded = 1.0 - float(np.mean(valid)) if valid.size else 0.0
    if excluded:
        logger.debug("Excluded %.1f%% of interior points", 100 * excluded)
    difference = table[mask][valid] - expected[valid]
    return {
        "residual": utils.max_abs(difference) / utils.max_abs(reference),
        "excluded_fraction": excluded,
        "on_lattice": on_lattice,
    }


def closed_form_J_kernel(
    x: np.ndarray, y: np.ndarray, tau: float, with_i: bool
) -> np.ndarray:
    """Closed form of the R_tau(J) kernel, with or without i in the last exponent"""
    w = tau * x + (1 - tau) * y
    last = -2j * np.pi * w * w if with_i else -2 * np.pi * w * w
    return constants.EIGHTH_TURN * np.exp(1j * np.pi / 2 * (x - y) ** 2 + last)


KERNEL_SAMPLES = ((0.0, 0.0), (0.5, -0.25), (1.0, 0.5), (-0.75, 0.3), (0.2, 1.1))


def kernel_quadrature(S: np.ndarray, tau: float, x: float, y: float) -> complex:
    """Kernel of R_tau(S) at (x, y) by damped quadrature of the p-integral"""
    spec = IntertwinerSpec(S=S, tau=tau)
    (m11, m12), (_, m22) = spec.M
    u = x - y
    w = tau * x + (1 - tau) * y
    integral = fresnel_quadrature(m22, -(m12 * u + w))
    return spec.normalization * np.exp(1j * np.pi * m11 * u * u) * integral


def kernel_hypotheses(
    tau: float, samples: Sequence[Tuple[float, float]] = KERNEL_SAMPLES
) -> Dict[str, float]:
    """Max relative error of each closed-form R_tau(J) kernel against quadrature"""
    J = np.array([[0.0, 1.0], [-1.0, 0.0]])
    oracle = np.array([kernel_quadrature(J, tau, x, y) for x, y in samples])
    xs = np.array([x for x, _ in samples])
    ys = np.array([y for _, y in samples])
    errors = {}
    for name, with_i in (("with_i", True), ("without_i", False)):
        candidate = closed_form_J_kernel(xs, ys, tau, with_i)
        errors[name] = utils.max_abs(candidate - oracle) / utils.max_abs(oracle)
    return errors
