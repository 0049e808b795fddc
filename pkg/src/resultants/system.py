"""Homogeneous polynomial systems: construction, degree data, JSON and generators."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb, prod
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .errors import InputError
from .exactpoly import MPoly, as_rational, coeff_symbol, parse

__all__ = [
    "DegreeData",
    "HomogeneousPoly",
    "PolySystem",
    "build_symbolic",
    "degree_data",
    "evaluate_poly",
    "force_common_root",
    "from_json",
    "multi_indices",
    "numeric_system",
    "random_dense",
    "to_json",
]


def multi_indices(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Sorted multi-indices of length ``degree`` over 1..nvars, lexicographic."""
    return list(combinations_with_replacement(range(1, nvars + 1), degree))


def _exponent_vector(index: Sequence[int], nvars: int) -> tuple[int, ...]:
    vec = [0] * nvars
    for i in index:
        vec[i - 1] += 1
    return tuple(vec)


@dataclass(frozen=True)
class HomogeneousPoly:
    """f(x) = sum over sorted multi-indices I of coeffs[I] * x_{i1} ... x_{ir}.

    ``coeffs`` is stored as a tuple of ``(index, MPoly)`` pairs in index order;
    absent indices have coefficient 0.
    """

    nvars: int
    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.nvars < 1 or self.degree < 1:
            raise InputError("nvars and degree must be positive")
        seen = set()
        for index, c in self.coeffs:
            if len(index) != self.degree:
                raise InputError(f"index {index} does not have length {self.degree}")
            if list(index) != sorted(index):
                raise InputError(f"index {index} is not sorted nondecreasing")
            if not all(1 <= i <= self.nvars for i in index):
                raise InputError(f"index {index} out of range 1..{self.nvars}")
            if index in seen:
                raise InputError(f"duplicate index {index}")
            if not isinstance(c, MPoly):
                raise InputError(f"coefficient for {index} is not an MPoly")
            seen.add(index)

    @classmethod
    def from_mapping(cls, nvars: int, degree: int, coeffs: Mapping) -> "HomogeneousPoly":
        items = []
        for index, c in coeffs.items():
            c = c if isinstance(c, MPoly) else MPoly.constant(c)
            if c:
                items.append((tuple(index), c))
        items.sort()
        return cls(nvars, degree, tuple(items))

    def coefficient_map(self) -> dict[tuple[int, ...], MPoly]:
        return dict(self.coeffs)

    def exponent_terms(self) -> list[tuple[tuple[int, ...], MPoly]]:
        """Pairs (exponent vector in x, coefficient)."""
        return [(_exponent_vector(i, self.nvars), c) for i, c in self.coeffs]

    @property
    def is_numeric(self) -> bool:
        return all(c.is_constant() for _, c in self.coeffs)

    def is_symbolic_for(self, poly_index: int) -> bool:
        expected = multi_indices(self.nvars, self.degree)
        if [i for i, _ in self.coeffs] != expected:
            return False
        return all(c == MPoly.symbol(coeff_symbol(poly_index, i)) for i, c in self.coeffs)

    def scaled(self, lam) -> "HomogeneousPoly":
        return HomogeneousPoly.from_mapping(
            self.nvars, self.degree, {i: c.scale(lam) for i, c in self.coeffs}
        )


@dataclass(frozen=True)
class DegreeData:
    d_vec: tuple[int, ...]
    d_total: int


def degree_data(degrees: Sequence[int]) -> DegreeData:
    degrees = tuple(degrees)
    if not degrees or any(r < 1 for r in degrees):
        raise InputError(f"degrees must be positive integers, got {degrees}")
    full = prod(degrees)
    d_vec = tuple(full // r for r in degrees)
    return DegreeData(d_vec, sum(d_vec))


@dataclass(frozen=True)
class PolySystem:
    n: int
    degrees: tuple[int, ...]
    polys: tuple[HomogeneousPoly, ...]

    def __post_init__(self):
        if len(self.polys) != self.n or len(self.degrees) != self.n:
            raise InputError("a system needs exactly n polynomials and n degrees")
        for p, r in zip(self.polys, self.degrees):
            if p.degree != r:
                raise InputError(f"polynomial degree {p.degree} does not match {r}")
            if p.nvars != self.n:
                raise InputError("all polynomials must have n variables")

    @property
    def mode(self) -> str:
        if all(p.is_numeric for p in self.polys):
            return "numeric"
        if all(p.is_symbolic_for(i + 1) for i, p in enumerate(self.polys)):
            return "symbolic"
        return "mixed"

    def degree_data(self) -> DegreeData:
        return degree_data(self.degrees)

    def replace(self, i: int, poly: HomogeneousPoly) -> "PolySystem":
        polys = list(self.polys)
        polys[i] = poly
        return PolySystem(self.n, self.degrees, tuple(polys))


def _check_shape(n: int, degrees: Sequence[int]) -> tuple[int, ...]:
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    degrees = tuple(degrees)
    if len(degrees) != n or any(not isinstance(r, int) or r < 1 for r in degrees):
        raise InputError(f"need {n} positive integer degrees, got {degrees}")
    return degrees


def _symbolic_poly(n: int, r: int, i: int) -> HomogeneousPoly:
    return HomogeneousPoly(
        n, r, tuple((idx, MPoly.symbol(coeff_symbol(i, idx))) for idx in multi_indices(n, r))
    )


def build_symbolic(n: int, degrees: Sequence[int]) -> PolySystem:
    """Generic system: every coefficient is its own symbol ``f{i}_{index}``."""
    degrees = _check_shape(n, degrees)
    polys = tuple(_symbolic_poly(n, r, i + 1) for i, r in enumerate(degrees))
    return PolySystem(n, degrees, polys)


def numeric_system(n: int, degrees: Sequence[int], coeffs: Sequence[Mapping]) -> PolySystem:
    degrees = _check_shape(n, degrees)
    polys = tuple(
        HomogeneousPoly.from_mapping(n, r, {tuple(k): as_rational(v) for k, v in c.items()})
        for r, c in zip(degrees, coeffs)
    )
    return PolySystem(n, degrees, polys)


def _random_rational(rng: random.Random, nonzero: bool = False) -> mpq:
    while True:
        q = mpq(rng.randint(-9, 9), rng.randint(1, 5))
        if q or not nonzero:
            return q


def random_dense(n: int, degrees: Sequence[int], seed: int) -> PolySystem:
    """Numeric system with every coefficient a random nonzero small rational."""
    degrees = _check_shape(n, degrees)
    rng = random.Random(seed)
    coeffs = [
        {idx: _random_rational(rng, nonzero=True) for idx in multi_indices(n, r)}
        for r in degrees
    ]
    return numeric_system(n, degrees, coeffs)


def force_common_root(n: int, degrees: Sequence[int], root: Sequence, seed: int) -> PolySystem:
    """Random numeric system whose polynomials all vanish at ``root``.

    Each polynomial is a random nonzero rational combination of the binomials
    ``x_a*m - (root_a/root_b)*x_b*m`` over monomials m of degree r-1, where b is
    the first coordinate with root_b != 0.
    """
    degrees = _check_shape(n, degrees)
    root = [as_rational(x) for x in root]
    if len(root) != n:
        raise InputError(f"root must have {n} coordinates")
    nonzero = [j for j, x in enumerate(root) if x]
    if not nonzero:
        raise InputError("root must not be the zero vector")
    if n == 1:
        raise InputError("a nonzero form in one variable has no nonzero root")
    b = nonzero[0]
    rng = random.Random(seed)
    polys = []
    for r in degrees:
        poly = None
        while poly is None or not poly.coeffs:  # retry on exact cancellation
            acc: dict[tuple[int, ...], mpq] = {}
            for base in multi_indices(n, r - 1) if r > 1 else [()]:
                for a in range(n):
                    if a == b:
                        continue
                    lam = _random_rational(rng, nonzero=True)
                    ratio = root[a] / root[b]
                    for var, c in ((a, lam), (b, -lam * ratio)):
                        idx = tuple(sorted(base + (var + 1,)))
                        acc[idx] = acc.get(idx, mpq(0)) + c
            poly = HomogeneousPoly.from_mapping(n, r, acc)
        polys.append(poly)
    return PolySystem(n, degrees, tuple(polys))


def evaluate_poly(p: HomogeneousPoly, point: Sequence) -> mpq:
    if not p.is_numeric:
        raise InputError("evaluate_poly needs numeric coefficients; evaluate them first")
    if len(point) != p.nvars:
        raise InputError(f"point must have {p.nvars} coordinates")
    x = [as_rational(v) for v in point]
    total = mpq(0)
    for index, c in p.coeffs:
        term = c.constant_value()
        for i in index:
            term *= x[i - 1]
        total += term
    return total


# --- JSON ----------------------------------------------------------------


def _poly_doc(p: HomogeneousPoly) -> dict:
    return {"monomials": [{"index": list(i), "coeff": str(c)} for i, c in p.coeffs]}


def to_json(system: PolySystem) -> dict:
    mode = system.mode
    doc = {"n": system.n, "degrees": list(system.degrees), "mode": mode}
    if mode == "numeric":
        doc["polynomials"] = [_poly_doc(p) for p in system.polys]
    elif mode == "mixed":
        doc["polynomials"] = [
            {"symbolic": True} if p.is_symbolic_for(i + 1) else _poly_doc(p)
            for i, p in enumerate(system.polys)
        ]
    return doc


def from_json(doc) -> PolySystem:
    """Parse a system document (a dict or a JSON string)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("system document must be a JSON object")
    try:
        n = doc["n"]
        degrees = _check_shape(n, doc["degrees"])
    except KeyError as exc:
        raise InputError(f"missing field {exc}") from exc
    mode = doc.get("mode", "numeric")
    if mode not in ("symbolic", "numeric", "mixed"):
        raise InputError(f"unknown mode {mode!r}")
    entries = doc.get("polynomials")
    if entries is None:
        if mode != "symbolic":
            raise InputError("'polynomials' is required unless mode is symbolic")
        return build_symbolic(n, degrees)
    if not isinstance(entries, list) or len(entries) != n:
        raise InputError(f"'polynomials' must be a list of {n} entries")

    polys = []
    for i, (r, entry) in enumerate(zip(degrees, entries)):
        if not isinstance(entry, dict):
            raise InputError("each polynomial must be a JSON object")
        if entry.get("symbolic"):
            if mode == "numeric":
                raise InputError("symbolic polynomial inside a numeric document")
            polys.append(_symbolic_poly(n, r, i + 1))
            continue
        coeffs = {}
        for mono in entry.get("monomials", []):
            try:
                index = tuple(mono["index"])
                text = mono["coeff"]
            except (KeyError, TypeError) as exc:
                raise InputError(f"bad monomial entry {mono!r}") from exc
            if not isinstance(text, str):
                raise InputError("coefficients must be strings such as \"3/2\"")
            if any(not isinstance(j, int) for j in index):
                raise InputError(f"index entries must be integers: {index}")
            if index in coeffs:
                raise InputError(f"duplicate index {index}")
            c = parse(text)
            if mode == "numeric" and not c.is_constant():
                raise InputError(f"non-numeric coefficient {text!r} in numeric mode")
            coeffs[index] = c
        polys.append(HomogeneousPoly.from_mapping(n, r, coeffs))
    return PolySystem(n, degrees, tuple(polys))


def coefficient_count(n: int, r: int) -> int:
    return comb(n + r - 1, r)


def symbolic_coefficients(system: PolySystem, i: int) -> Iterable:
    """Coefficient symbols of polynomial ``i`` (0-based) in a symbolic system."""
    return [coeff_symbol(i + 1, idx) for idx, _ in system.polys[i].coeffs]
