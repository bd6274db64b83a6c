from .gridfield import Grid1D, OperatorMatrix, PhaseGrid, SampledFunction
from .symbols import GaussianSymbol, TabulatedSymbol
from .heisenberg import HeisenbergOp
from .ordering import NCPoly
from .models import CheckResult, Report, RunConfig

__all__ = (
    "Grid1D",
    "OperatorMatrix",
    "PhaseGrid",
    "SampledFunction",
    "GaussianSymbol",
    "TabulatedSymbol",
    "HeisenbergOp",
    "NCPoly",
    "CheckResult",
    "Report",
    "RunConfig",
)
