import logging
from typing import Sequence, Tuple

import attr
import numpy as np

from shubinlab import utils
from shubinlab.gridfield import Grid1D, OperatorMatrix, SampledFunction
from shubinlab.sympcore import sigma

logger = logging.getLogger(__name__)


@attr.s(auto_attribs=True, repr=False, kw_only=True, frozen=True)
class HeisenbergOp:
    """T_tau(z0) f(x) = exp(2 pi i (p0 x - (1 - tau) p0 x0)) f(x - x0)

    The shift x0 is snapped to the grid; the translation is periodic.
    Phase laws are exact for p0 on the momentum lattice, where exp(2 pi i p0 L) = 1.
    """

    z0: Sequence[float]
    grid: Grid1D
    tau: float = 0.5
    shift: int = attr.ib(init=False)
    snap_error: float = attr.ib(init=False)

    def __attrs_post_init__(self) -> None:
        shift, snap_error = self.grid.snap(float(self.z0[0]))
        if snap_error:
            logger.debug("Snapped shift %s by %.3e", self.z0[0], snap_error)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "snap_error", snap_error)

    @property
    def x0(self) -> float:
        return self.shift * self.grid.dx

    @property
    def p0(self) -> float:
        return float(self.z0[1])

    def phase(self) -> np.ndarray:
        return np.exp(
            2j * np.pi * (self.p0 * self.grid.x - (1 - self.tau) * self.p0 * self.x0)
        )

    def apply(self, f: SampledFunction) -> SampledFunction:
        values = self.phase() * np.roll(f.values, self.shift)
        return SampledFunction(grid=f.grid, values=values)

    def matrix(self) -> OperatorMatrix:
        shift_matrix = np.roll(np.identity(self.grid.N), self.shift, axis=0)
        return OperatorMatrix.from_linear_map(
            self.grid, self.phase()[:, None] * shift_matrix
        )

    def __repr__(self) -> str:
        return utils.create_repr(self, ["z0", "tau"])


def apply_T(z0: Sequence[float], f: SampledFunction) -> SampledFunction:
    return HeisenbergOp(z0=z0, grid=f.grid).apply(f)


def apply_T_tau(tau: float, z0: Sequence[float], f: SampledFunction) -> SampledFunction:
    return HeisenbergOp(z0=z0, grid=f.grid, tau=tau).apply(f)


def heisenberg_matrix(tau: float, z0: Sequence[float], grid: Grid1D) -> OperatorMatrix:
    return HeisenbergOp(z0=z0, grid=grid, tau=tau).matrix()


def tau_phase(tau: float, z0: Sequence[float]) -> complex:
    """Scalar linking T_tau(z0) to T(z0)"""
    return complex(np.exp(1j * np.pi * (2 * tau - 1) * z0[1] * z0[0]))


def commutator_phase(z0: Sequence[float], z1: Sequence[float]) -> complex:
    """exp(2 pi i sigma(z0, z1)), the same for every tau"""
    return complex(np.exp(2j * np.pi * sigma(np.asarray(z0), np.asarray(z1))))


def composition_phase(
    z0: Sequence[float], z1: Sequence[float], tau: float = 0.5
) -> complex:
    """c with T_tau(z0 + z1) = c T_tau(z0) T_tau(z1)

    Reduces to exp(-i pi sigma(z0, z1)) at tau = 1/2.
    """
    x0, p0 = z0
    x1, p1 = z1
    symplectic = sigma(np.asarray(z0), np.asarray(z1))
    correction = (2 * tau - 1) * (p0 * x1 + p1 * x0)
    return complex(np.exp(-1j * np.pi * symplectic + 1j * np.pi * correction))


def random_lattice_point(
    rng: np.random.Generator, grid: Grid1D, reach: int = 24
) -> Tuple[float, float]:
    """Point (m dx, k dp) with |m|, |k| <= reach"""
    m, k = rng.integers(-reach, reach + 1, size=2)
    return float(m * grid.dx), float(k * grid.dp)
