from fractions import Fraction
from math import factorial, prod

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

import displays as D
from conftest import tex_to_mpoly
from resultants.errors import BudgetExceeded, InputError
from resultants.exactpoly import (
    MPoly,
    coeff_symbol,
    evaluate,
    homogeneous_components,
    matrix_symbol,
    parse,
)
from resultants.resultant import _matmul
from resultants.system import build_symbolic, random_dense
from resultants.traces import (
    TraceTable,
    aggregated_trace,
    estimate_candidates,
    gradings_in_box,
    gradings_up_to,
    multigraded_trace,
    naive_trace_oracle,
    pairing_plan,
    row_operator_expansion,
    shift_coefficient,
    trace_power,
    walk_count,
)


def test_shift_coefficient():
    assert shift_coefficient(1, 0) == 1
    assert shift_coefficient(1, 4) == mpq(1, 24)
    assert shift_coefficient(2, 1) == 1
    assert shift_coefficient(2, 2) == mpq(1, 12)
    assert shift_coefficient(3, 2) == mpq(3, 720)
    with pytest.raises(InputError):
        shift_coefficient(0, 1)


def test_trace_power_small():
    assert trace_power(2, 1) == parse("A1_1 + A2_2")
    assert trace_power(2, 2) == parse("A1_1^2 + 2*A1_2*A2_1 + A2_2^2")
    assert trace_power(1, 5) == parse("A1_1^5")
    with pytest.raises(BudgetExceeded):
        trace_power(3, 10, budget=1000)


# --- walk counting ---------------------------------------------------------


@pytest.mark.parametrize(
    "e, expected",
    [
        (((1,),), 1),
        (((3,),), 1),
        (((0, 1), (1, 0)), 2),
        (((1, 1), (1, 0)), 3),
        (((0, 2), (2, 0)), 2),
        (((1, 1), (1, 1)), 4),
        (((0, 1, 0), (0, 0, 1), (1, 0, 0)), 3),
        (((1, 0), (0, 1)), 0),  # disconnected
        (((0, 2), (1, 0)), 0),  # unbalanced
        (((0, 0), (0, 0)), 2),  # tr A^0 = n
    ],
)
def test_walk_count_examples(e, expected):
    assert walk_count(e) == expected


def _det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return det


def _best_walks(e):
    """m * t_w * prod (deg-1)! / prod E_ij!  (BEST theorem, unlabelled edges)."""
    n = len(e)
    m = sum(map(sum, e))
    deg = [sum(row) for row in e]
    if deg != [sum(e[i][j] for i in range(n)) for j in range(n)]:
        return 0
    active = [v for v in range(n) if deg[v]]
    lap = [[(deg[i] if i == j else 0) - e[i][j] for j in active] for i in active]
    minor = [row[1:] for row in lap[1:]]
    trees = _det(minor) if minor else Fraction(1)
    ec = trees * prod(factorial(deg[v] - 1) for v in active)
    return int(m * ec / prod(factorial(x) for row in e for x in row))


matrices = st.integers(1, 3).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(0, 3), min_size=n, max_size=n), min_size=n, max_size=n
    )
)


@settings(max_examples=300)
@given(matrices)
def test_walk_count_matches_best_theorem(e):
    e = tuple(map(tuple, e))
    if not any(map(any, e)):
        return
    assert walk_count(e) == _best_walks(e)


@settings(max_examples=200)
@given(matrices)
def test_unbalanced_matrices_have_no_walks(e):
    n = len(e)
    rows = [sum(r) for r in e]
    cols = [sum(e[i][j] for i in range(n)) for j in range(n)]
    if rows != cols:
        assert walk_count(tuple(map(tuple, e))) == 0


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _all_matrices(n, m):
    for flat in _compositions(m, n * n):
        yield tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


@pytest.mark.parametrize("n, m", [(n, m) for n in (1, 2, 3) for m in range(1, 7)])
def test_walk_counts_reconstruct_trace_power(n, m):
    a = [[matrix_symbol(i + 1, j + 1) for j in range(n)] for i in range(n)]
    terms = []
    for e in _all_matrices(n, m):
        w = walk_count(e)
        if w:
            mono = tuple((a[i][j], e[i][j]) for i in range(n) for j in range(n) if e[i][j])
            terms.append((mono, w))
    assert MPoly(terms) == trace_power(n, m)


# --- operator expansion and traces -------------------------------------------


def test_row_operator_expansion_quadratic():
    f = build_symbolic(2, [2, 2]).polys[0]
    exp = row_operator_expansion(f, 2)
    assert exp[(2, 2)] == parse("2*f1_11*f1_22 + f1_12^2")
    assert exp[(4, 0)] == parse("f1_11^2")
    assert exp[(3, 1)] == parse("2*f1_11*f1_12")
    assert sum(len(c) for c in exp.values()) == 6
    assert row_operator_expansion(f, 0) == {(0, 0): MPoly.constant(1)}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_linear_traces_are_matrix_traces(n):
    s = build_symbolic(n, [1] * n)
    m = [[c for _, c in p.coeffs] for p in s.polys]
    power = m
    for k in range(1, 5):
        if k > 1:
            power = _matmul(power, m)
        assert aggregated_trace(s, k) == sum((power[i][i] for i in range(n)), MPoly())


@pytest.mark.parametrize("degrees", [[2, 2], [1, 2], [2, 1, 1]])
def test_multigraded_trace_is_multihomogeneous(degrees):
    s = build_symbolic(len(degrees), degrees)
    weights = {}
    for i, p in enumerate(s.polys):
        for idx, _ in p.coeffs:
            w = [0] * s.n
            w[i] = 1
            weights[coeff_symbol(i + 1, idx)] = tuple(w)
    for kvec in gradings_up_to(s.n, 3):
        parts = homogeneous_components(multigraded_trace(s, kvec), weights)
        assert set(parts) <= {kvec}


@pytest.mark.parametrize("degrees", [[2, 2], [1, 3], [2, 1, 1]])
def test_plan_matches_naive_oracle(degrees):
    s = build_symbolic(len(degrees), degrees)
    for kvec in gradings_up_to(s.n, 3):
        if sum(r * k for r, k in zip(degrees, kvec)) <= 7:
            assert multigraded_trace(s, kvec) == naive_trace_oracle(s, kvec), kvec


def test_numeric_trace_equals_evaluated_symbolic():
    sym, num = build_symbolic(2, [2, 3]), random_dense(2, [2, 3], 4)
    assign = {
        coeff_symbol(i + 1, idx): c
        for i, p in enumerate(num.polys)
        for idx, c in p.coeffs
    }
    for kvec in [(1, 0), (1, 1), (2, 1), (0, 2)]:
        assert evaluate(multigraded_trace(sym, kvec), assign) == multigraded_trace(num, kvec)


def test_zero_and_bad_gradings():
    s = build_symbolic(2, [2, 2])
    with pytest.raises(InputError):
        multigraded_trace(s, (0, 0))
    with pytest.raises(InputError):
        multigraded_trace(s, (1,))
    with pytest.raises(InputError):
        multigraded_trace(s, (-1, 2))


def test_budget_refusal_names_grading():
    with pytest.raises(BudgetExceeded) as info:
        pairing_plan((2, 2, 2), (2, 1, 1), budget=10)
    assert info.value.grading == (2, 1, 1)
    assert estimate_candidates((2, 2, 2), (2, 1, 1)) > 10


def test_trace_table_parallel_matches_serial():
    s = build_symbolic(2, [2, 3])
    kvecs = gradings_in_box((3, 2))
    serial, parallel = TraceTable(s), TraceTable(s)
    serial.fill(kvecs)
    parallel.fill(kvecs, jobs=2)
    assert serial.entries == parallel.entries
    assert serial.aggregated(2) == aggregated_trace(s, 2)


def test_grading_enumerations():
    assert gradings_in_box((1, 2)) == [(0, 1), (1, 0), (0, 2), (1, 1), (1, 2)]
    assert len(gradings_up_to(3, 2)) == 3 + 6


def test_quadric_pair_components(sym22):
    table = TraceTable(sym22)
    for kvec, display in (
        ((2, 0), D.R22_T20),
        ((1, 1), D.R22_T11),
        ((0, 2), D.R22_T02),
        ((4, 0), D.R22_T40),
        ((3, 1), D.R22_T31),
    ):
        assert table[kvec] == tex_to_mpoly(display), kvec
