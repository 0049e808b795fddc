"""Generalized traces of a polynomial map.

For a system of degrees (r_1..r_n) the multigraded trace is

    T_k = [prod r_i / prod (r_i k_i)!] * (1/m) * f1^(k_1)...fn^(k_n) . tr A^m |_{A=0}

with m = sum r_i k_i and fi^ = f_i(d/dA_i1, ..., d/dA_in).  Expanding each
operator power by rows and pairing it against tr A^m with the rule
(d/dx)^a x^b |_0 = a! [a == b] gives

    T_k = [prod r_i / prod (r_i k_i)!] / m
          * sum_E  prod_i rowcoeff_i(E_i) * walks(E) * prod_ij E_ij!

where E runs over nonnegative n x n matrices with row sums r_i k_i and walks(E)
counts the cyclic index sequences of tr A^m whose edge usage is exactly E.  The
weights depend only on (degrees, k), so they are cached as a "pairing plan" and
reused for every coefficient assignment.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb, factorial, prod
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import BudgetExceeded, InputError
from .exactpoly import MPoly, derivative, evaluate, matrix_symbol
from .system import HomogeneousPoly, PolySystem

__all__ = [
    "DEFAULT_BUDGET",
    "TraceTable",
    "aggregated_trace",
    "estimate_candidates",
    "multigraded_trace",
    "naive_trace_oracle",
    "pairing_plan",
    "row_operator_expansion",
    "shift_coefficient",
    "trace_power",
    "walk_count",
]

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
NAIVE_MAX_M = 10
NAIVE_MAX_N = 3


def shift_coefficient(r: int, k: int) -> mpq:
    """k-th series coefficient r/(r k)! of the generalized shift S_r."""
    if r < 1 or k < 0:
        raise InputError(f"need r >= 1 and k >= 0, got r={r}, k={k}")
    return mpq(r, factorial(r * k))


def trace_power(n: int, m: int, budget: int = DEFAULT_BUDGET) -> MPoly:
    """tr A^m for the symbolic n x n matrix A (oracle/display use only)."""
    if n < 1 or m < 1:
        raise InputError("trace_power needs n >= 1 and m >= 1")
    if n**m > budget:
        raise BudgetExceeded(
            f"tr A^{m} for n={n} spans {n**m} index sequences (cap {budget})",
            estimate=n**m,
            cap=budget,
        )
    a = [[MPoly.symbol(matrix_symbol(i + 1, j + 1)) for j in range(n)] for i in range(n)]
    power = a
    for _ in range(m - 1):
        power = [
            [sum((power[i][l] * a[l][j] for l in range(n)), MPoly()) for j in range(n)]
            for i in range(n)
        ]
    return sum((power[i][i] for i in range(n)), MPoly())


def row_operator_expansion(poly: HomogeneousPoly, k: int) -> dict[tuple[int, ...], MPoly]:
    """Coefficients of f(y)^k as a polynomial in n formal row variables y."""
    if k < 0:
        raise InputError("operator power must be nonnegative")
    expansion = {(0,) * poly.nvars: MPoly.constant(1)}
    terms = poly.exponent_terms()
    for _ in range(k):
        nxt: dict[tuple[int, ...], MPoly] = {}
        for vec, c in expansion.items():
            for alpha, a in terms:
                key = tuple(x + y for x, y in zip(vec, alpha))
                prev = nxt.get(key)
                nxt[key] = c * a if prev is None else prev + c * a
        expansion = {v: c for v, c in nxt.items() if c}
    return expansion


def _connected(e: Sequence[Sequence[int]]) -> bool:
    n = len(e)
    active = [v for v in range(n) if any(e[v]) or any(e[u][v] for u in range(n))]
    if not active:
        return True
    seen = {active[0]}
    stack = [active[0]]
    while stack:
        v = stack.pop()
        for u in range(n):
            if (e[v][u] or e[u][v]) and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(active)


@lru_cache(maxsize=1 << 16)
def walk_count(e: tuple[tuple[int, ...], ...]) -> int:
    """Number of cyclic index sequences (i_1..i_m) with edge usage exactly E.

    Counted as rooted closed walks from one start vertex s by memoized DP over
    (residual edge counts, current vertex); every rotation of a walk is a valid
    sequence, so the total is count_s * m / outdeg(s).
    """
    e = tuple(tuple(int(x) for x in row) for row in e)
    n = len(e)
    if any(len(row) != n for row in e):
        raise InputError("exponent matrix must be square")
    m = sum(map(sum, e))
    if m == 0:
        return n  # tr A^0 = n
    rows = [sum(row) for row in e]
    cols = [sum(e[i][j] for i in range(n)) for j in range(n)]
    if rows != cols or not _connected(e):
        return 0

    flat = [x for row in e for x in row]
    strides = []
    s = 1
    for x in flat:
        strides.append(s)
        s *= x + 1
    code0 = sum(x * st for x, st in zip(flat, strides))
    start = next(v for v in range(n) if rows[v])
    memo: dict[int, int] = {}

    # the current vertex is implied by the residual (imbalance), so the code alone is the key
    def count(code: int, v: int) -> int:
        if code == 0:
            return 1 if v == start else 0
        hit = memo.get(code)
        if hit is not None:
            return hit
        total = 0
        base = v * n
        for j in range(n):
            st = strides[base + j]
            if (code // st) % (flat[base + j] + 1):
                total += count(code - st, j)
        memo[code] = total
        return total

    rooted = count(code0, start)
    return rooted * m // rows[start]


def _row_vectors(total: int, n: int) -> Iterable[tuple[int, ...]]:
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _row_vectors(total - first, n - 1):
            yield (first,) + rest


def estimate_candidates(degrees: Sequence[int], kvec: Sequence[int]) -> int:
    """Upper bound on exponent matrices examined for one trace."""
    n = len(degrees)
    sizes = [comb(r * k + n - 1, n - 1) for r, k in zip(degrees, kvec)]
    return prod(sizes[:-1]) if n > 1 else 1


def _check_kvec(degrees: Sequence[int], kvec: Sequence[int]) -> tuple[int, ...]:
    kvec = tuple(int(k) for k in kvec)
    if len(kvec) != len(degrees):
        raise InputError(f"grading vector {kvec} has wrong length for {len(degrees)} polynomials")
    if any(k < 0 for k in kvec):
        raise InputError(f"grading vector {kvec} has negative entries")
    if not any(kvec):
        raise InputError("the zero grading vector has no trace (t_0...0 = 0)")
    return kvec


@lru_cache(maxsize=4096)
def _pairing_plan_cached(degrees: tuple, kvec: tuple) -> tuple:
    n = len(degrees)
    row_sums = [r * k for r, k in zip(degrees, kvec)]
    m = sum(row_sums)
    pref = mpq(prod(degrees), prod(factorial(s) for s in row_sums) * m)
    plan = []

    def rec(i: int, residual: list[int], rows: list[tuple[int, ...]]):
        if i == n - 1:
            last = tuple(residual)
            if sum(last) != row_sums[-1] or min(last) < 0:
                return
            e = tuple(rows) + (last,)
            w = walk_count(e)
            if w:
                mult = prod(factorial(x) for row in e for x in row)
                plan.append((e, pref * w * mult))
            return
        for vec in _row_vectors(row_sums[i], n):
            if all(v <= res for v, res in zip(vec, residual)):
                rows.append(vec)
                rec(i + 1, [res - v for res, v in zip(residual, vec)], rows)
                rows.pop()

    rec(0, list(row_sums), [])
    return tuple(plan)


def pairing_plan(degrees: Sequence[int], kvec: Sequence[int], budget: int = DEFAULT_BUDGET):
    """Nonzero (E, weight) pairs for T_k; the weight absorbs every scalar factor."""
    degrees = tuple(degrees)
    kvec = _check_kvec(degrees, kvec)
    est = estimate_candidates(degrees, kvec)
    if est > budget:
        raise BudgetExceeded(
            f"trace {kvec} needs ~{est} exponent-matrix candidates (cap {budget})",
            estimate=est,
            cap=budget,
            grading=kvec,
        )
    return _pairing_plan_cached(degrees, kvec)


def _contract(plan, expansions: list[dict]) -> MPoly:
    """sum_E weight(E) * prod_i expansions[i][E_i], grouped by shared row prefixes."""
    n = len(expansions)
    trie: dict = {}
    for e, w in plan:
        node = trie
        for row in e[:-1]:
            node = node.setdefault(row, {})
        node[e[-1]] = node.get(e[-1], 0) + w

    def acc(node: dict, i: int) -> MPoly:
        exp = expansions[i]
        if i == n - 1:
            out = MPoly()
            for row, w in node.items():
                c = exp.get(row)
                if c is not None:
                    out = out + c.scale(w)
            return out
        out = MPoly()
        for row, child in node.items():
            c = exp.get(row)
            if c is None:
                continue
            inner = acc(child, i + 1)
            if inner:
                out = out + c * inner
        return out

    return acc(trie, 0)


def multigraded_trace(
    system: PolySystem,
    kvec: Sequence[int],
    budget: int = DEFAULT_BUDGET,
    _expansions: dict | None = None,
) -> MPoly:
    plan = pairing_plan(system.degrees, kvec, budget)
    kvec = tuple(kvec)
    expansions = []
    for i, (poly, k) in enumerate(zip(system.polys, kvec)):
        cached = None if _expansions is None else _expansions.get((i, k))
        if cached is None:
            cached = row_operator_expansion(poly, k)
            if _expansions is not None:
                _expansions[(i, k)] = cached
        expansions.append(cached)
    return _contract(plan, expansions)


def _gradings_with_sum(n: int, k: int) -> Iterable[tuple[int, ...]]:
    return _row_vectors(k, n)


def aggregated_trace(system: PolySystem, k: int, budget: int = DEFAULT_BUDGET) -> MPoly:
    """T_k = k * sum over |kvec| = k of T_kvec."""
    if k < 1:
        raise InputError("aggregated trace needs k >= 1")
    total = MPoly()
    for kvec in _gradings_with_sum(system.n, k):
        total = total + multigraded_trace(system, kvec, budget)
    return total.scale(k)


def naive_trace_oracle(system: PolySystem, kvec: Sequence[int]) -> MPoly:
    """T_k by literally applying the differential operators to tr A^m at A = 0.

    Terms are dropped as soon as they cannot survive A = 0: before row i is
    differentiated its total degree must equal the derivative order r_i k_i, and
    once row i is done none of its entries may remain.
    """
    degrees = system.degrees
    kvec = _check_kvec(degrees, kvec)
    n = system.n
    m = sum(r * k for r, k in zip(degrees, kvec))
    if m > NAIVE_MAX_M or n > NAIVE_MAX_N:
        raise BudgetExceeded(
            f"naive oracle is capped at m <= {NAIVE_MAX_M}, n <= {NAIVE_MAX_N} (got m={m}, n={n})",
            estimate=m,
            cap=NAIVE_MAX_M,
            grading=kvec,
        )
    a = [[matrix_symbol(i + 1, j + 1) for j in range(n)] for i in range(n)]
    row_of = {a[i][j]: i for i in range(n) for j in range(n)}
    row_targets = [r * k for r, k in zip(degrees, kvec)]

    def row_degree(mono, i):
        return sum(e for s, e in mono if row_of.get(s) == i)

    current = trace_power(n, m)
    current = MPoly(
        [
            (mono, c)
            for mono, c in current.terms()
            if all(row_degree(mono, i) == row_targets[i] for i in range(n))
        ]
    )
    for i, (poly, k) in enumerate(zip(system.polys, kvec)):
        for _ in range(k):
            nxt = MPoly()
            for alpha, coeff in poly.exponent_terms():
                term = current
                for j, power in enumerate(alpha):
                    for _ in range(power):
                        term = derivative(term, a[i][j])
                nxt = nxt + coeff * term
            current = nxt
        current = evaluate(current, {a[i][j]: 0 for j in range(n)})

    value = evaluate(current, {s: 0 for s in row_of})
    scale = mpq(prod(degrees), prod(factorial(t) for t in row_targets) * m)
    return value.scale(scale)


@dataclass
class TraceTable:
    """Lazily filled map grading vector -> T_kvec for one system."""

    system: PolySystem
    budget: int = DEFAULT_BUDGET
    entries: dict = field(default_factory=dict)
    _expansions: dict = field(default_factory=dict, repr=False)

    def __getitem__(self, kvec) -> MPoly:
        kvec = tuple(kvec)
        hit = self.entries.get(kvec)
        if hit is None:
            hit = multigraded_trace(self.system, kvec, self.budget, self._expansions)
            self.entries[kvec] = hit
        return hit

    def aggregated(self, k: int) -> MPoly:
        total = MPoly()
        for kvec in _gradings_with_sum(self.system.n, k):
            total = total + self[kvec]
        return total.scale(k)

    def check_budget(self, kvecs: Iterable[Sequence[int]]) -> dict:
        """Raise on the first grading whose plan would exceed the budget."""
        worst = 0
        count = 0
        for kvec in kvecs:
            kvec = _check_kvec(self.system.degrees, kvec)
            est = estimate_candidates(self.system.degrees, kvec)
            if est > self.budget:
                raise BudgetExceeded(
                    f"trace {kvec} needs ~{est} exponent-matrix candidates (cap {self.budget})",
                    estimate=est,
                    cap=self.budget,
                    grading=kvec,
                )
            worst = max(worst, est)
            count += 1
        return {"gradings": count, "max_candidates": worst, "cap": self.budget}

    def fill(self, kvecs: Iterable[Sequence[int]], jobs: int = 1) -> None:
        todo = [tuple(k) for k in kvecs if tuple(k) not in self.entries]
        if jobs <= 1 or len(todo) < 2:
            for kvec in todo:
                self[kvec]
            return
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {
                kvec: pool.submit(multigraded_trace, self.system, kvec, self.budget)
                for kvec in todo
            }
            for kvec, fut in futures.items():
                self.entries[kvec] = fut.result()

    def aggregated_table(self, kmax: int) -> dict[int, MPoly]:
        return {k: self.aggregated(k) for k in range(1, kmax + 1)}


def gradings_in_box(bound: Sequence[int]) -> list[tuple[int, ...]]:
    """All nonzero vectors 0 <= k <= bound, ordered by total then lexicographically."""
    vecs = [v for v in product(*(range(b + 1) for b in bound)) if any(v)]
    vecs.sort(key=lambda v: (sum(v), v))
    return vecs


def gradings_up_to(n: int, total: int) -> list[tuple[int, ...]]:
    """All nonzero n-vectors with component sum <= total."""
    vecs = [v for k in range(1, total + 1) for v in _gradings_with_sum(n, k)]
    vecs.sort(key=lambda v: (sum(v), v))
    return vecs
