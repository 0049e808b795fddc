"""Sparse multivariate polynomials with exact rational coefficients.

Variables live in one namespaced alphabet shared by every engine:

* ``COEFF``  -- coefficient of a homogeneous polynomial, ``(poly, sorted multi-index)``,
  printed ``f1_112`` (poly 1, monomial x1*x1*x2).  When some index exceeds 9 the
  indices are dot-separated: ``f1_3.10``.
* ``MATRIX`` -- entry of the auxiliary matrix, ``(row, col)``, printed ``A1_2``.
* ``TVAR``   -- abstract Schur argument indexed by a grading vector, printed
  ``t3`` for a scalar index and ``t2_1`` for a vector index.

Coefficients are ``gmpy2.mpq``.  Internally every symbol owns a fixed-width slot
in a process-wide registry and a monomial is one packed Python integer, so
monomial multiplication is integer addition.  The packing never leaks: terms,
printing, pickling and equality are all expressed through symbols.

Canonical text form
-------------------
Terms are printed in ascending total degree; ties are broken by comparing the
sorted symbol lists (with repetition) lexicographically in the symbol order
``COEFF < MATRIX < TVAR`` and then by indices.  Grammar::

    poly    := "0" | ["-"] term ((" + " | " - ") term)*
    term    := rational | [rational "*"] factor ("*" factor)*
    factor  := name ["^" integer]          (integer >= 2)
    rational:= integer ["/" integer]       (reduced, positive denominator)

The parser accepts arbitrary whitespace, repeated factors, factors in any order
and a rational anywhere in a product; ``parse(str(p)) == p`` always holds.
"""

from __future__ import annotations

import enum
import re
import threading
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from gmpy2 import mpq

from .errors import InputError

__all__ = [
    "ArithOp",
    "MPoly",
    "Monomial",
    "Namespace",
    "Symbol",
    "arith",
    "as_rational",
    "coeff_symbol",
    "derivative",
    "evaluate",
    "graded_component",
    "homogeneous_components",
    "matrix_symbol",
    "parse",
    "parse_symbol",
    "t_symbol",
]

_WIDTH = 32
_MASK = (1 << _WIDTH) - 1


class Namespace(enum.IntEnum):
    COEFF = 0
    MATRIX = 1
    TVAR = 2


class Symbol(NamedTuple):
    """A variable; ordered by namespace, then lexicographically by indices."""

    kind: Namespace
    key: tuple

    @property
    def name(self) -> str:
        if self.kind is Namespace.COEFF:
            poly, index = self.key
            sep = "." if any(i > 9 for i in index) else ""
            return f"f{poly}_{sep.join(map(str, index))}"
        if self.kind is Namespace.MATRIX:
            return "A{}_{}".format(*self.key)
        return "t" + "_".join(map(str, self.key))

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"Symbol({self.name})"


def coeff_symbol(poly: int, index: Iterable[int]) -> Symbol:
    index = tuple(int(i) for i in index)
    if poly < 1 or any(i < 1 for i in index):
        raise InputError(f"coefficient indices are 1-based: {poly}, {index}")
    if list(index) != sorted(index):
        raise InputError(f"coefficient multi-index must be nondecreasing: {index}")
    return Symbol(Namespace.COEFF, (int(poly), index))


def matrix_symbol(row: int, col: int) -> Symbol:
    if row < 1 or col < 1:
        raise InputError(f"matrix indices are 1-based: ({row}, {col})")
    return Symbol(Namespace.MATRIX, (int(row), int(col)))


def t_symbol(*grading: int) -> Symbol:
    if len(grading) == 1 and isinstance(grading[0], (tuple, list)):
        grading = tuple(grading[0])
    if not grading or any(g < 0 for g in grading):
        raise InputError(f"bad t-symbol grading {grading}")
    return Symbol(Namespace.TVAR, tuple(int(g) for g in grading))


_NAME_RE = re.compile(r"f(\d+)_([0-9.]+)|A(\d+)_(\d+)|t(\d+(?:_\d+)*)")


def parse_symbol(name: str) -> Symbol:
    m = _NAME_RE.fullmatch(name)
    if m is None:
        raise InputError(f"unknown symbol name {name!r}")
    if m.group(1):
        idx = m.group(2)
        parts = idx.split(".") if "." in idx else list(idx)
        return coeff_symbol(int(m.group(1)), (int(p) for p in parts))
    if m.group(3):
        return matrix_symbol(int(m.group(3)), int(m.group(4)))
    return t_symbol(*(int(p) for p in m.group(5).split("_")))


# --- slot registry -------------------------------------------------------

_slots: dict[Symbol, int] = {}
_symbols: list[Symbol] = []
_lock = threading.Lock()


def _slot(sym: Symbol) -> int:
    slot = _slots.get(sym)
    if slot is None:
        with _lock:
            slot = _slots.get(sym)
            if slot is None:
                slot = len(_symbols)
                _symbols.append(sym)
                _slots[sym] = slot
    return slot


def _decode(key: int) -> list[tuple[int, int]]:
    out = []
    slot = 0
    while key:
        e = key & _MASK
        if e:
            out.append((slot, e))
        key >>= _WIDTH
        slot += 1
    return out


def _encode(pairs: Iterable[tuple[Symbol, int]]) -> int:
    key = 0
    for sym, e in pairs:
        if e < 0:
            raise InputError(f"negative exponent {e} for {sym}")
        if e >= _MASK:
            raise InputError(f"exponent {e} exceeds the supported range")
        key += e << (_WIDTH * _slot(sym))
    return key


Monomial = tuple  # tuple[tuple[Symbol, int], ...] sorted by symbol
Rational = Union[int, Fraction, "mpq"]


def _monomial(key: int) -> Monomial:
    return tuple(sorted((_symbols[s], e) for s, e in _decode(key)))


def as_rational(x) -> mpq:
    """Convert int/Fraction/mpq/'p/q' strings to ``mpq``; floats are rejected."""
    if isinstance(x, float):
        raise TypeError("floating-point coefficients are not allowed")
    if isinstance(x, str):
        try:
            return mpq(x.strip())
        except ValueError as exc:
            raise InputError(f"bad rational literal {x!r}") from exc
    return mpq(x)


_ZERO = mpq(0)
_ONE = mpq(1)


class MPoly:
    """Immutable sparse polynomial; the empty polynomial is 0."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable | None = None):
        self._hash = None
        self._terms: dict[int, mpq] = {}
        if terms is None:
            return
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc = self._terms
        for mono, c in items:
            if isinstance(mono, Mapping):
                mono = mono.items()
            key = _encode(mono)
            acc[key] = acc.get(key, _ZERO) + as_rational(c)
        for key in [k for k, c in acc.items() if not c]:
            del acc[key]

    @classmethod
    def _raw(cls, terms: dict) -> "MPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "MPoly":
        c = as_rational(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def symbol(cls, sym: Symbol) -> "MPoly":
        return cls._raw({1 << (_WIDTH * _slot(sym)): _ONE})

    # -- inspection -------------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def terms(self) -> list[tuple[Monomial, mpq]]:
        """Terms in canonical order."""
        out = [(_monomial(k), c) for k, c in self._terms.items()]
        out.sort(key=lambda t: _order_key(t[0]))
        return out

    def coefficient(self, monomial: Monomial | Mapping = ()) -> mpq:
        if isinstance(monomial, Mapping):
            monomial = monomial.items()
        key = 0
        for sym, e in monomial:
            slot = _slots.get(sym)
            if slot is None:
                return _ZERO
            key += e << (_WIDTH * slot)
        return self._terms.get(key, _ZERO)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self) -> mpq:
        if not self.is_constant():
            raise InputError("polynomial is not a constant")
        return self._terms.get(0, _ZERO)

    def symbols(self) -> set[Symbol]:
        slots: set[int] = set()
        for key in self._terms:
            slots.update(s for s, _ in _decode(key))
        return {_symbols[s] for s in slots}

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e for _, e in _decode(k)) for k in self._terms), default=-1)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction, type(_ONE))) and not isinstance(other, bool):
            return MPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        get = out.get
        for k, c in b.items():
            v = get(k, _ZERO) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({k: -c for k, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "MPoly":
        c = as_rational(c)
        if not c:
            return MPoly()
        return MPoly._raw({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, (int, Fraction, type(_ONE))) and not isinstance(other, bool):
                return self.scale(other)
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return MPoly()
        if len(a) == 1 and 0 in a:
            return other.scale(a[0])
        if len(b) == 1 and 0 in b:
            return self.scale(b[0])
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, mpq] = {}
        get = out.get
        b_items = list(b.items())
        for ka, ca in a.items():
            for kb, cb in b_items:
                k = ka + kb
                out[k] = get(k, _ZERO) + ca * cb
        return MPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            other = other.constant_value()
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(1 / c)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise InputError(f"exponent must be a nonnegative integer, got {e!r}")
        result = MPoly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, type(_ONE))):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms()))
        return self._hash

    def __reduce__(self):
        return (_rebuild, ([(m, str(c)) for m, c in self.terms()],))

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        text = to_text(self)
        if len(text) > 200:
            text = text[:200] + f"... ({len(self)} terms)"
        return f"MPoly({text!r})"


def _rebuild(items):
    return MPoly(items)


def _order_key(mono: Monomial):
    flat = []
    for sym, e in mono:
        flat.extend([sym] * e)
    return (len(flat), flat)


def _format_factor(sym: Symbol, e: int) -> str:
    return sym.name if e == 1 else f"{sym.name}^{e}"


def to_text(p: MPoly) -> str:
    if not p:
        return "0"
    pieces = []
    for i, (mono, c) in enumerate(p.terms()):
        neg = c < 0
        mag = -c if neg else c
        factors = "*".join(_format_factor(s, e) for s, e in mono)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = factors
        else:
            body = f"{mag}*{factors}"
        if i == 0:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[fAt][0-9_.]*[0-9])|(?P<op>[-+*^]))"
)


def parse(text: str) -> MPoly:
    """Inverse of ``str(MPoly)``; see the module docstring for the grammar."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise InputError(f"cannot parse polynomial near {text[pos:pos + 20]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    if not tokens:
        raise InputError("empty polynomial text")

    i = 0
    terms: dict[int, mpq] = {}
    sign = _ONE
    if tokens[0] == ("op", "-"):
        sign, i = -_ONE, 1
    elif tokens[0] == ("op", "+"):
        i = 1
    while True:
        coeff = sign
        key = 0
        expect_factor = True
        while expect_factor:
            if i >= len(tokens):
                raise InputError("polynomial text ends inside a term")
            kind, val = tokens[i]
            i += 1
            if kind == "num":
                coeff *= as_rational(val)
            elif kind == "name":
                exp = 1
                if i < len(tokens) and tokens[i] == ("op", "^"):
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != "num" or "/" in tokens[i + 1][1]:
                        raise InputError("exponent must be a nonnegative integer")
                    exp = int(tokens[i + 1][1])
                    i += 2
                key += exp << (_WIDTH * _slot(parse_symbol(val)))
            else:
                raise InputError(f"unexpected operator {val!r}")
            if i < len(tokens) and tokens[i] == ("op", "*"):
                i += 1
            else:
                expect_factor = False
        terms[key] = terms.get(key, _ZERO) + coeff
        if i >= len(tokens):
            break
        kind, val = tokens[i]
        if kind != "op" or val not in "+-":
            raise InputError(f"expected + or - but found {val!r}")
        sign = _ONE if val == "+" else -_ONE
        i += 1
    return MPoly._raw({k: c for k, c in terms.items() if c})


# --- operations ----------------------------------------------------------


class ArithOp(enum.Enum):
    ADD = "add"
    MUL = "mul"
    NEG = "neg"
    SCALE = "scale"
    POW = "pow"


def arith(op: ArithOp, a: MPoly, b=None) -> MPoly:
    """Dispatch form of the ring operations (operators work too)."""
    if op is ArithOp.ADD:
        return a + b
    if op is ArithOp.MUL:
        return a * b
    if op is ArithOp.NEG:
        return -a
    if op is ArithOp.SCALE:
        return a.scale(b)
    if op is ArithOp.POW:
        return a ** b
    raise InputError(f"unknown operation {op!r}")


def derivative(p: MPoly, s: Symbol) -> MPoly:
    slot = _slots.get(s)
    if slot is None:
        return MPoly()
    shift = _WIDTH * slot
    unit = 1 << shift
    out = {}
    for k, c in p._terms.items():
        e = (k >> shift) & _MASK
        if e:
            out[k - unit] = c * e
    return MPoly._raw(out)


def evaluate(p: MPoly, assignment: Mapping[Symbol, object]) -> MPoly:
    """Substitute rationals or polynomials for symbols; others stay symbolic."""
    by_slot = {}
    for sym, val in assignment.items():
        slot = _slots.get(sym)
        if slot is None:
            continue
        by_slot[slot] = val if isinstance(val, MPoly) else MPoly.constant(val)
    if not by_slot:
        return p
    if all(v.is_constant() for v in by_slot.values()):
        values = {s: v.constant_value() for s, v in by_slot.items()}
        out: dict[int, mpq] = {}
        for k, c in p._terms.items():
            rest = k
            for slot, e in _decode(k):
                if slot in values:
                    c = c * values[slot] ** e
                    rest -= e << (_WIDTH * slot)
                    if not c:
                        break
            if c:
                out[rest] = out.get(rest, _ZERO) + c
        return MPoly._raw({k: c for k, c in out.items() if c})

    powers: dict[tuple[int, int], MPoly] = {}
    total = MPoly()
    for k, c in p._terms.items():
        rest = k
        factor = MPoly.constant(c)
        for slot, e in _decode(k):
            if slot in by_slot:
                pw = powers.get((slot, e))
                if pw is None:
                    pw = powers[(slot, e)] = by_slot[slot] ** e
                factor = factor * pw
                rest -= e << (_WIDTH * slot)
        total = total + factor * MPoly._raw({rest: _ONE})
    return total


def _weighted_degree(key: int, weights: dict[int, tuple]) -> tuple:
    deg = None
    for slot, e in _decode(key):
        w = weights.get(slot)
        if w is None:
            raise InputError(f"symbol {_symbols[slot]} has no weight")
        contrib = tuple(e * x for x in w)
        deg = contrib if deg is None else tuple(a + b for a, b in zip(deg, contrib))
    return deg


def _normalize_weights(weight: Mapping[Symbol, object]) -> tuple[dict[int, tuple], bool]:
    scalar = True
    out = {}
    for sym, w in weight.items():
        if isinstance(w, int):
            w = (w,)
        else:
            scalar = False
            w = tuple(w)
        out[_slot(sym)] = w
    return out, scalar


def homogeneous_components(p: MPoly, weight: Mapping[Symbol, object]) -> dict:
    """Split ``p`` by weighted multidegree; the values sum back to ``p``."""
    weights, scalar = _normalize_weights(weight)
    dim = len(next(iter(weights.values()))) if weights else 1
    zero = (0,) * dim
    parts: dict[tuple, dict[int, mpq]] = {}
    for k, c in p._terms.items():
        deg = _weighted_degree(k, weights) or zero
        parts.setdefault(deg, {})[k] = c
    return {(d[0] if scalar else d): MPoly._raw(t) for d, t in parts.items()}


def graded_component(p: MPoly, weight: Mapping[Symbol, object], target) -> MPoly:
    """Sum of the terms of ``p`` whose weighted degree equals ``target``."""
    weights, _ = _normalize_weights(weight)
    target = (target,) if isinstance(target, int) else tuple(target)
    zero = (0,) * len(target)
    out = {}
    for k, c in p._terms.items():
        if (_weighted_degree(k, weights) or zero) == target:
            out[k] = c
    return MPoly._raw(out)
