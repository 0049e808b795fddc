from itertools import product
from math import factorial

import pytest
from gmpy2 import mpq

from resultants.errors import BudgetExceeded, InputError
from resultants.exactpoly import MPoly, derivative, parse, t_symbol
from resultants.schur import (
    LatticePath,
    SchurMethod,
    exp_series,
    lattice_paths,
    multi_schur,
    ordered_partitions,
    partition_from_path,
    schur_poly,
)


def test_small_schur_polynomials():
    assert str(schur_poly(3)) == "t3 + t1*t2 + 1/6*t1^3"
    assert schur_poly(2) == parse("t2 + 1/2*t1^2")
    assert schur_poly(1) == parse("t1")
    assert schur_poly(0) == MPoly.constant(1)


def test_pure_t1_argument():
    t = {1: parse("t1")} | {i: 0 for i in range(2, 13)}
    p = schur_poly(12, t)
    assert p == parse("t1^12").scale(mpq(1, 479001600))
    assert factorial(12) == 479001600


def test_missing_t_rejected():
    with pytest.raises(InputError):
        schur_poly(3, {1: 1, 2: 1})
    with pytest.raises(InputError):
        multi_schur((1, 1), {(1, 0): 1, (0, 1): 1})


@pytest.mark.parametrize("k", range(1, 13))
def test_partition_count(k):
    parts = list(ordered_partitions(k))
    assert len(parts) == 2 ** (k - 1)
    assert all(sum(p.parts) == k for p in parts)
    ms = [p.m for p in parts]
    assert ms == sorted(ms)


def test_partition_order():
    assert [p.parts for p in ordered_partitions(3)] == [(3,), (1, 2), (2, 1), (1, 1, 1)]
    vec = [p.parts for p in ordered_partitions((1, 1))]
    assert vec == [((1, 1),), ((0, 1), (1, 0)), ((1, 0), (0, 1))]


def test_lattice_paths_scalar():
    paths = list(lattice_paths(3))
    assert len(paths) == 4
    assert sorted(p.m for p in paths) == [1, 2, 2, 3]
    assert LatticePath((0, 2, 3)).velocities() == (2, 1)


def _targets(max_sum):
    for dim in (1, 2, 3):
        for vec in product(range(max_sum + 1), repeat=dim):
            if 0 < sum(vec) <= max_sum:
                yield vec


@pytest.mark.parametrize("target", list(_targets(5)))
def test_path_partition_bijection(target):
    key = target[0] if len(target) == 1 else target
    paths = list(lattice_paths(key))
    parts = list(ordered_partitions(key))
    assert [partition_from_path(p) for p in paths] == parts
    assert len(set(paths)) == len(paths)
    assert all(1 <= p.m <= sum(target) for p in paths)


@pytest.mark.parametrize("k", range(1, 7))
def test_enumerate_equals_recurrence(k):
    assert schur_poly(k, method=SchurMethod.ENUMERATE) == schur_poly(k, method=SchurMethod.RECURRENCE)
    assert schur_poly(k, method=SchurMethod.SERIES_EXP) == schur_poly(k)


@pytest.mark.parametrize("target", [v for v in _targets(6) if len(v) > 1 and sum(v) <= 5] + [(2, 2, 2), (3, 3)])
def test_multi_schur_enumerate_equals_series(target):
    assert multi_schur(target, method=SchurMethod.ENUMERATE) == multi_schur(target)


@pytest.mark.parametrize("k", range(1, 7))
def test_derivative_property(k):
    pk = schur_poly(k)
    for i in range(1, k + 1):
        assert derivative(pk, t_symbol(i)) == schur_poly(k - i)


def test_multi_schur_displays():
    assert multi_schur((2, 1)) == parse("t2_1 + t2_0*t0_1 + t1_0*t1_1 + 1/2*t1_0^2*t0_1")
    assert multi_schur((1, 1, 1)) == parse(
        "t1_1_1 + t1_0_0*t0_1_1 + t0_1_0*t1_0_1 + t1_1_0*t0_0_1 + t0_1_0*t0_0_1*t1_0_0"
    )
    assert multi_schur((1, 0)) == parse("t1_0")
    assert multi_schur((0, 0)) == MPoly.constant(1)


def test_one_dimensional_multi_schur_is_schur():
    for k in range(1, 7):
        scalar = schur_poly(k, {i: parse(f"t{i}_0") for i in range(1, k + 1)})
        assert multi_schur((k, 0)) == scalar


def test_enumerate_cap():
    with pytest.raises(BudgetExceeded):
        schur_poly(9, method=SchurMethod.ENUMERATE)


def test_exp_series_requires_downward_closed_set():
    t = {(1, 0): parse("t1_0"), (0, 1): parse("t0_1")}
    with pytest.raises(InputError):
        exp_series(t, [(0, 0), (1, 1)])
    out = exp_series(t, [(0, 0), (1, 0), (0, 1), (1, 1)])
    assert out[(1, 1)] == parse("t1_0*t0_1")
