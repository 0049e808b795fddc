"""Resultant assembly from traces, plus the classical cross-checks.

MULTI:  R(f) = (-1)^(d_1+...+d_n) * P_{d_1..d_n}{ t_k := -T_k }
SINGLE: R(f) = (-1)^d * P_d{ t_k := -T_k / k }
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

from gmpy2 import mpq

from .errors import InputError
from .exactpoly import MPoly
from .schur import SchurMethod, exp_series, schur_poly
from .system import DegreeData, HomogeneousPoly, PolySystem, degree_data
from .traces import DEFAULT_BUDGET, TraceTable, gradings_in_box, gradings_up_to

__all__ = [
    "GradingMode",
    "ResultantResult",
    "determinant",
    "determinant_special",
    "deformed_resultant",
    "leibniz_determinant",
    "resultant",
    "solvability_probe",
    "sylvester_matrix",
    "sylvester_resultant",
]


class GradingMode(enum.Enum):
    SINGLE = "single"
    MULTI = "multi"


@dataclass(frozen=True)
class ResultantResult:
    value: MPoly
    degree_data: DegreeData
    grading_mode: GradingMode
    term_count: int
    trace_budget_report: dict = field(default_factory=dict)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def resultant(
    system: PolySystem,
    mode: GradingMode = GradingMode.MULTI,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    table: TraceTable | None = None,
) -> ResultantResult:
    dd = degree_data(system.degrees)
    table = table if table is not None else TraceTable(system, budget)
    if mode is GradingMode.MULTI:
        kvecs = gradings_in_box(dd.d_vec)
    elif mode is GradingMode.SINGLE:
        kvecs = gradings_up_to(system.n, dd.d_total)
    else:
        raise InputError(f"unknown grading mode {mode!r}")
    report = table.check_budget(kvecs)

    started = time.perf_counter()
    table.fill(kvecs, jobs=jobs)
    report["trace_seconds"] = round(time.perf_counter() - started, 3)

    started = time.perf_counter()
    if mode is GradingMode.MULTI:
        t = {k: -table[k] for k in kvecs}
        box = [(0,) * system.n] + kvecs
        value = exp_series(t, box)[dd.d_vec]
        if _sign(dd.d_total) < 0:
            value = -value
    else:
        t = {k: table.aggregated(k).scale(mpq(-1, k)) for k in range(1, dd.d_total + 1)}
        value = schur_poly(dd.d_total, t, SchurMethod.RECURRENCE)
        if _sign(dd.d_total) < 0:
            value = -value
    report["assembly_seconds"] = round(time.perf_counter() - started, 3)
    return ResultantResult(value, dd, mode, len(value), report)


def deformed_resultant(
    system: PolySystem, depth: int | None = None, budget: int = DEFAULT_BUDGET
) -> MPoly:
    """exp(-sum_k T_k) truncated to total degree ``depth`` (default d): R(I - f)."""
    dd = degree_data(system.degrees)
    depth = dd.d_total if depth is None else depth
    if depth < 0:
        raise InputError("depth must be nonnegative")
    if depth == 0:
        return MPoly.constant(1)
    table = TraceTable(system, budget)
    kvecs = gradings_up_to(system.n, depth)
    table.check_budget(kvecs)
    t = {k: -table[k] for k in kvecs}
    series = exp_series(t, [(0,) * system.n] + kvecs)
    total = MPoly()
    for p in series.values():
        total = total + p
    return total


def leibniz_determinant(matrix: Sequence[Sequence]) -> MPoly:
    """Sum over permutations; exponential, for oracles on small matrices."""
    n = len(matrix)
    total = MPoly()
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = MPoly.constant(_sign(inversions))
        for i, j in enumerate(perm):
            entry = matrix[i][j]
            term = term * (entry if isinstance(entry, MPoly) else MPoly.constant(entry))
        total = total + term
    return total


def determinant(matrix: Sequence[Sequence]) -> MPoly:
    """Laplace expansion along rows, memoized over column subsets."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise InputError("determinant needs a square matrix")
    if n == 0:
        return MPoly.constant(1)
    rows = [[x if isinstance(x, MPoly) else MPoly.constant(x) for x in row] for row in matrix]
    memo: dict[int, MPoly] = {}

    def minor(i: int, cols: int) -> MPoly:
        # cols: bitmask of columns still available for rows i..n-1
        if i == n:
            return MPoly.constant(1)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        total = MPoly()
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                entry = rows[i][j]
                if entry:
                    sub = minor(i + 1, cols & ~(1 << j))
                    if sub:
                        total = total + (entry * sub if sign > 0 else -(entry * sub))
                sign = -sign
        memo[cols] = total
        return total

    return minor(0, (1 << n) - 1)


def _matmul(a, b):
    n = len(a)
    return [[sum((a[i][l] * b[l][j] for l in range(n)), MPoly()) for j in range(n)] for i in range(n)]


def determinant_special(matrix: Sequence[Sequence], method: SchurMethod = SchurMethod.RECURRENCE) -> MPoly:
    """det f = (-1)^n P_n{ -tr f^k / k }."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise InputError("determinant needs a square matrix")
    if n == 0:
        return MPoly.constant(1)
    f = [[x if isinstance(x, MPoly) else MPoly.constant(x) for x in row] for row in matrix]
    traces = {}
    power = f
    for k in range(1, n + 1):
        if k > 1:
            power = _matmul(power, f)
        traces[k] = sum((power[i][i] for i in range(n)), MPoly()).scale(mpq(-1, k))
    value = schur_poly(n, traces, method)
    return value if n % 2 == 0 else -value


def _binary_coefficients(p: HomogeneousPoly) -> list[MPoly]:
    """Coefficients of x1^r, x1^(r-1) x2, ..., x2^r."""
    coeffs = p.coefficient_map()
    r = p.degree
    return [coeffs.get((1,) * (r - j) + (2,) * j, MPoly()) for j in range(r + 1)]


def sylvester_matrix(f: HomogeneousPoly, g: HomogeneousPoly) -> list[list[MPoly]]:
    if f.nvars != 2 or g.nvars != 2:
        raise InputError("the Sylvester resultant needs binary forms (n = 2)")
    a, b = _binary_coefficients(f), _binary_coefficients(g)
    r1, r2 = f.degree, g.degree
    size = r1 + r2
    rows = []
    for shift in range(r2):
        rows.append([MPoly()] * shift + a + [MPoly()] * (size - shift - r1 - 1))
    for shift in range(r1):
        rows.append([MPoly()] * shift + b + [MPoly()] * (size - shift - r2 - 1))
    return rows


def sylvester_resultant(f: HomogeneousPoly, g: HomogeneousPoly) -> MPoly:
    return determinant(sylvester_matrix(f, g))


def solvability_probe(
    system: PolySystem, budget: int = DEFAULT_BUDGET, mode: GradingMode = GradingMode.MULTI
) -> mpq:
    """Exact value of the resultant at the system's numeric coefficients."""
    if any(not p.is_numeric for p in system.polys):
        raise InputError("solvability_probe needs a numeric system")
    return resultant(system, mode, budget).value.constant_value()
