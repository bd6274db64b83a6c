import os
from itertools import islice
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Type, TypeVar

import marshmallow
import numpy as np

from shubinlab import constants


def get_unknown_field_handling(strict_validation: bool) -> str:
    if strict_validation:
        return marshmallow.RAISE
    else:
        return marshmallow.EXCLUDE


def is_env_var(env_var: str) -> bool:
    env_var_str = os.getenv(env_var, "").lower()
    return env_var_str in ("yes", "true", "y", "1")


def create_repr(obj: Any, attrs: Optional[Sequence[str]] = None) -> str:
    if attrs is None:
        attrs = obj.__dict__.keys()
    attrs_kv: List[str] = []
    for attr in attrs:
        attr_value = getattr(obj, attr)
        if attr_value is not None:
            attrs_kv.append(f"{attr}={attr_value!r}")
    attrs_repr = ", ".join(attrs_kv)
    return f"{obj.__class__.__qualname__}({attrs_repr})"


G = TypeVar("G")


def grouper(
    iterable: Iterable[G], n: int, cast: Type[Any] = tuple
) -> Iterable[Tuple[G, ...]]:
    it = iter(iterable)
    while True:
        chunk = cast(islice(it, n))
        if not chunk:
            return
        yield chunk


def is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0


def max_abs(array: np.ndarray) -> float:
    if array.size == 0:
        return 0.0
    return float(np.max(np.abs(array)))


def relative_frobenius(
    actual: np.ndarray, expected: np.ndarray, floor: float = constants.NORM_FLOOR
) -> float:
    """Relative Frobenius distance ||actual - expected|| / ||expected||

    Falls back to the absolute distance when ||expected|| <= floor, where the
    reference is rounding noise.
    """
    scale = np.linalg.norm(expected)
    distance = np.linalg.norm(actual - expected)
    if scale <= floor:
        return float(distance)
    return float(distance / scale)


def best_phase(reference: np.ndarray, target: np.ndarray) -> complex:
    """Scalar lambda minimizing ||target - lambda * reference||_F"""
    denominator = np.vdot(reference, reference)
    if denominator == 0:
        return 0j
    return complex(np.vdot(reference, target) / denominator)
