"""Exact resultants of homogeneous polynomial systems.

The resultant is assembled from generalized traces of the system with
(multi-)Schur polynomials; Sylvester and determinant oracles are included
for cross-checking.
"""

from .errors import BudgetExceeded, InputError
from .exactpoly import MPoly, Namespace, Symbol, coeff_symbol, matrix_symbol, parse, t_symbol
from .resultant import (
    GradingMode,
    ResultantResult,
    deformed_resultant,
    determinant,
    determinant_special,
    resultant,
    solvability_probe,
    sylvester_resultant,
)
from .schur import SchurMethod, multi_schur, ordered_partitions, schur_poly
from .system import (
    HomogeneousPoly,
    PolySystem,
    build_symbolic,
    degree_data,
    force_common_root,
    random_dense,
)
from .traces import TraceTable, aggregated_trace, multigraded_trace, naive_trace_oracle, walk_count

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "GradingMode",
    "HomogeneousPoly",
    "InputError",
    "MPoly",
    "Namespace",
    "PolySystem",
    "ResultantResult",
    "SchurMethod",
    "Symbol",
    "TraceTable",
    "aggregated_trace",
    "build_symbolic",
    "coeff_symbol",
    "deformed_resultant",
    "degree_data",
    "determinant",
    "determinant_special",
    "force_common_root",
    "matrix_symbol",
    "multi_schur",
    "multigraded_trace",
    "naive_trace_oracle",
    "ordered_partitions",
    "parse",
    "random_dense",
    "resultant",
    "schur_poly",
    "solvability_probe",
    "sylvester_resultant",
    "t_symbol",
    "walk_count",
]
