from typing import Dict, Tuple, Union

import numpy as np
from mypy_extensions import TypedDict

JSONScalar = Union[str, int, float, bool, None]

PhasePoint = Tuple[float, float]
RealMatrix = np.ndarray
ComplexMatrix = np.ndarray

# exponents (x, p) -> coefficient
PolyCoeffs = Dict[Tuple[int, int], complex]

CocycleResult = TypedDict(
    "CocycleResult",
    {
        "phase_measured": complex,
        "phase_predicted": complex,
        "residual": float,
        "modulus_defect": float,
        "matches": Tuple[str, ...],
    },
)
InverseAdjointResult = TypedDict(
    "InverseAdjointResult",
    {"inv_residual": float, "adj_residual": float, "unitarity_defect": float},
)
CovarianceResult = TypedDict(
    "CovarianceResult",
    {"residual": float, "excluded_fraction": float, "on_lattice": bool},
)
