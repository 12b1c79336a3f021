"""Fredholm determinants, renormalized von Neumann entropies and related checks."""

from .entropy import FenValue, entropy_operator, fen, fen_truncated, renorm_log
from .fredholm import (
    DeterminantResult,
    Route,
    det_direct,
    det_grothendieck,
    det_plemelj,
    det_spectral,
    wedge_trace,
)
from .linalg import (
    DensityMatrix,
    TraceClassOperator,
    make_density,
    make_trace_class,
)
from .reports import ClaimReport

__version__ = "0.1.0"

__all__ = [
    "ClaimReport",
    "DensityMatrix",
    "DeterminantResult",
    "FenValue",
    "Route",
    "TraceClassOperator",
    "det_direct",
    "det_grothendieck",
    "det_plemelj",
    "det_spectral",
    "entropy_operator",
    "fen",
    "fen_truncated",
    "make_density",
    "make_trace_class",
    "renorm_log",
    "wedge_trace",
]
