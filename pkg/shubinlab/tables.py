"""CSV and JSON artifacts"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np
import pandas as pd

from shubinlab.exceptions import ShubinLabConfigError
from shubinlab.gridfield import Grid1D, PhaseGrid

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"

PathLike = Union[str, Path]


def phase_frame(table: np.ndarray, grid: Grid1D) -> pd.DataFrame:
    """Phase-space table in long form, one row per lattice point (x, p)"""
    x, p = PhaseGrid(grid=grid).mesh()
    table = np.asarray(table, dtype=complex)
    return pd.DataFrame(
        {
            "x": x.ravel(),
            "p": p.ravel(),
            "re": table.real.ravel(),
            "im": table.imag.ravel(),
        }
    )


def write_csv(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info("Wrote %d rows to %s", len(frame), path)
    return path


def to_jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    return value


def write_json(data: Any, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(to_jsonable(data), sort_keys=True, indent=2) + "\n")
    logger.info("Wrote %s", path)
    return path


def write_rows(rows: List[Dict[str, Any]], path: PathLike, format: str) -> Path:
    """Rows as CSV or as a JSON list, by `format`"""
    path = Path(path)
    if format == "csv":
        return write_csv(pd.DataFrame(rows), path.with_suffix(".csv"))
    if format == "json":
        return write_json(rows, path.with_suffix(".json"))
    raise ShubinLabConfigError(f"Unknown output format {format!r}")
