import logging
from typing import Any, Dict, List, Optional

import numpy as np

from shubinlab.bornjordan import bj_covariance_residual, metaplectic_generator
from shubinlab.exceptions import SingularityError
from shubinlab.gridfield import Grid1D, probe_matrix
from shubinlab.intertwine import intertwine_residual
from shubinlab.models import RunConfig
from shubinlab.symbols import GaussianSymbol, named_symbol

logger = logging.getLogger(__name__)

SCAN_GENERATORS = (("J", None), ("M", 2.0), ("V", 1.0))


def _label(kind: str, param: Optional[float]) -> str:
    return kind if param is None else f"{kind}({param:g})"


def covariance_scan(
    config: RunConfig, symbol: Optional[GaussianSymbol] = None
) -> List[Dict[str, Any]]:
    """Covariance residuals per generator, through R_tau(S) per tau and for Born-Jordan

    Generators outside Sp0 have no intertwiner; their tau rows carry a NaN residual
    and the reason.
    """
    grid: Grid1D = config.grid
    a = named_symbol("xp2-gaussian") if symbol is None else symbol
    probes = probe_matrix(grid)
    rows = []
    for kind, param in SCAN_GENERATORS:
        label = _label(kind, param)
        _, projection = metaplectic_generator(kind, param, grid)
        for tau in config.tau_list:
            row: Dict[str, Any] = {"generator": label, "quantization": f"tau={tau:g}"}
            try:
                row["residual"] = intertwine_residual(
                    projection, tau, a, grid, probes=probes
                )
                row["note"] = ""
            except SingularityError as e:
                logger.info("No intertwiner for %s: %s", label, e)
                row["residual"] = np.nan
                row["note"] = str(e)
            rows.append(row)
        rows.append(
            {
                "generator": label,
                "quantization": "born-jordan",
                "residual": bj_covariance_residual(kind, param, a, grid, probes),
                "note": "",
            }
        )
    logger.info("Covariance scan: %d rows", len(rows))
    return rows
