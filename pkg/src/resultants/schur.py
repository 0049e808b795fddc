"""Ordered partitions, lattice paths, Schur and multi-Schur polynomials.

P_k is the coefficient of z^k in exp(sum_{j>=1} t_j z^j); the multi-Schur
polynomial P_k (k a vector) is the coefficient of phi^k in
exp(sum_{j != 0} t_j phi^j).  P_0 = 1 and t at the zero index does not exist.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import factorial
from typing import Iterator, Mapping, Sequence, Union

from gmpy2 import mpq

from .errors import BudgetExceeded, InputError
from .exactpoly import MPoly, t_symbol

__all__ = [
    "LatticePath",
    "SchurMethod",
    "VectorPartition",
    "exp_series",
    "lattice_paths",
    "multi_schur",
    "ordered_partitions",
    "partition_from_path",
    "schur_poly",
]

ENUMERATE_MAX_SUM = 8

Target = Union[int, Sequence[int]]


class SchurMethod(enum.Enum):
    ENUMERATE = "enumerate"
    RECURRENCE = "recurrence"
    SERIES_EXP = "series_exp"


@dataclass(frozen=True)
class VectorPartition:
    """Ordered sequence of nonzero parts summing to ``target``.

    Parts are ints when the target was given as an int, tuples otherwise.
    """

    parts: tuple
    target: Union[int, tuple]

    @property
    def m(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class LatticePath:
    """Positions s(0) = 0, ..., s(m) = target; velocities are partition parts."""

    positions: tuple

    @property
    def m(self) -> int:
        return len(self.positions) - 1

    def velocities(self) -> tuple:
        pos = self.positions
        if isinstance(pos[0], int):
            return tuple(b - a for a, b in zip(pos, pos[1:]))
        return tuple(tuple(y - x for x, y in zip(a, b)) for a, b in zip(pos, pos[1:]))


def _as_vector(target: Target) -> tuple[tuple[int, ...], bool]:
    if isinstance(target, int):
        vec, scalar = (target,), True
    else:
        vec, scalar = tuple(int(x) for x in target), False
    if not vec or any(x < 0 for x in vec):
        raise InputError(f"target must be a nonnegative vector, got {target!r}")
    return vec, scalar


def _nonzero_below(bound: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors v <= bound in lexicographic order."""
    if len(bound) == 1:
        yield from ((x,) for x in range(1, bound[0] + 1))
        return

    def rec(i):
        if i == len(bound):
            yield ()
            return
        for x in range(bound[i] + 1):
            for rest in rec(i + 1):
                yield (x,) + rest

    for v in rec(0):
        if any(v):
            yield v


def _compositions(residual: tuple[int, ...], m: int) -> Iterator[tuple]:
    if m == 1:
        if any(residual):
            yield (residual,)
        return
    for part in _nonzero_below(residual):
        rest = tuple(r - p for r, p in zip(residual, part))
        if sum(rest) < m - 1:
            continue
        for tail in _compositions(rest, m - 1):
            yield (part,) + tail


def ordered_partitions(target: Target) -> Iterator[VectorPartition]:
    """All ordered partitions of ``target``: m ascending, parts lexicographic within m."""
    vec, scalar = _as_vector(target)
    total = sum(vec)
    if total == 0:
        raise InputError("target must be nonzero")
    for m in range(1, total + 1):
        for parts in _compositions(vec, m):
            if scalar:
                yield VectorPartition(tuple(p[0] for p in parts), vec[0])
            else:
                yield VectorPartition(parts, vec)


def lattice_paths(target: Target) -> Iterator[LatticePath]:
    """Lattice paths from 0 to ``target``, one per ordered partition."""
    for part in ordered_partitions(target):
        if isinstance(part.target, int):
            pos = [0]
            for v in part.parts:
                pos.append(pos[-1] + v)
        else:
            pos = [(0,) * len(part.target)]
            for v in part.parts:
                pos.append(tuple(a + b for a, b in zip(pos[-1], v)))
        yield LatticePath(tuple(pos))


def partition_from_path(path: LatticePath) -> VectorPartition:
    target = path.positions[-1]
    return VectorPartition(path.velocities(), target)


def _to_poly(x) -> MPoly:
    return x if isinstance(x, MPoly) else MPoly.constant(x)


def _lookup(t: Mapping | None, key, scalar: bool) -> MPoly:
    if t is None:
        return MPoly.symbol(t_symbol(*(key if not scalar else (key,))))
    if key not in t:
        raise InputError(f"missing Schur argument t[{key}]")
    return _to_poly(t[key])


def _enumerate(target_vec, scalar: bool, t, cap: int) -> MPoly:
    if sum(target_vec) > cap:
        raise BudgetExceeded(
            f"ENUMERATE is capped at component sum {cap}", estimate=sum(target_vec), cap=cap
        )
    total = MPoly()
    cache: dict = {}
    for part in ordered_partitions(target_vec[0] if scalar else target_vec):
        term = MPoly.constant(mpq(1, factorial(part.m)))
        for p in part.parts:
            val = cache.get(p)
            if val is None:
                val = cache[p] = _lookup(t, p, scalar)
            term = term * val
        total = total + term
    return total


def schur_poly(
    k: int,
    t: Mapping[int, object] | None = None,
    method: SchurMethod = SchurMethod.RECURRENCE,
    enumerate_cap: int = ENUMERATE_MAX_SUM,
) -> MPoly:
    """P_k{t}; ``t=None`` means the symbolic arguments t1, t2, ..."""
    if not isinstance(k, int) or k < 0:
        raise InputError(f"k must be a nonnegative integer, got {k!r}")
    if k == 0:
        return MPoly.constant(1)
    if method is SchurMethod.ENUMERATE:
        return _enumerate((k,), True, t, enumerate_cap)
    if method not in (SchurMethod.RECURRENCE, SchurMethod.SERIES_EXP):
        raise InputError(f"unsupported method {method}")
    ts = [None] + [_lookup(t, i, True) for i in range(1, k + 1)]
    p = [MPoly.constant(1)]
    # k P_k = sum_i i t_i P_{k-i}
    for j in range(1, k + 1):
        acc = MPoly()
        for i in range(1, j + 1):
            if ts[i] and p[j - i]:
                acc = acc + (ts[i] * p[j - i]).scale(i)
        p.append(acc.scale(mpq(1, j)))
    return p[k]


def exp_series(t: Mapping[tuple, MPoly], targets: Sequence[tuple[int, ...]]) -> dict:
    """Coefficients P_v of exp(sum t_u phi^u) for every v in a downward-closed set.

    Uses v_i P_v = sum_{u <= v, u_i >= 1} u_i t_u P_{v-u} along the first
    coordinate i with v_i > 0.  Missing t entries count as zero here; callers
    that need strict coverage check it first.
    """
    order = sorted({tuple(v) for v in targets}, key=lambda v: (sum(v), v))
    if not order:
        return {}
    dim = len(order[0])
    zero = (0,) * dim
    p: dict[tuple, MPoly] = {zero: MPoly.constant(1)}
    nonzero_t = {u: _to_poly(v) for u, v in t.items() if any(u)}
    for v in order:
        if v == zero:
            continue
        i = next(j for j, x in enumerate(v) if x)
        acc = MPoly()
        for u, tu in nonzero_t.items():
            if u[i] == 0 or not tu or any(a > b for a, b in zip(u, v)):
                continue
            rest = tuple(b - a for a, b in zip(u, v))
            prev = p.get(rest)
            if prev is None:
                raise InputError(f"exp_series target set is not downward closed at {rest}")
            if prev:
                acc = acc + (tu * prev).scale(u[i])
        p[v] = acc.scale(mpq(1, v[i]))
    return p


def multi_schur(
    target: Sequence[int],
    t: Mapping[tuple, object] | None = None,
    method: SchurMethod = SchurMethod.SERIES_EXP,
    enumerate_cap: int = ENUMERATE_MAX_SUM,
) -> MPoly:
    """Multi-Schur polynomial P_target{t}; ``t=None`` means symbolic t-symbols."""
    vec, _ = _as_vector(target)
    if not any(vec):
        return MPoly.constant(1)
    below = [u for u in _nonzero_below(vec)]
    table = {u: _lookup(t, u, False) for u in below}
    if method is SchurMethod.ENUMERATE:
        return _enumerate(vec, False, table, enumerate_cap)
    if method not in (SchurMethod.SERIES_EXP, SchurMethod.RECURRENCE):
        raise InputError(f"unsupported method {method}")
    box = [(0,) * len(vec)] + below
    return exp_series(table, box)[vec]
