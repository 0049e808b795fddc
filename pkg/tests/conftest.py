import re
import sys
from pathlib import Path

import pytest
from gmpy2 import mpq

sys.path.insert(0, str(Path(__file__).parent))

from resultants.exactpoly import MPoly, coeff_symbol, t_symbol  # noqa: E402
from resultants.system import build_symbolic  # noqa: E402

_POLY_LETTER = {"f": 1, "g": 2, "h": 3}
_TOKEN = re.compile(
    r"\s*(?:"
    r"\\dfrac\{(?P<fn>\d+)\}\{(?P<fd>\d+)\}"
    r"|(?P<rat>\d+/\d+)"
    r"|(?P<int>\d+)"
    r"|(?P<coef>[fgh])_\{(?P<idx>[\d ]+)\}"
    r"|T_\{?(?P<tr>\d+)\}?"
    r"|\^\{?(?P<exp>\d+)\}?"
    r"|(?P<op>[-+])"
    r")"
)


def tex_to_mpoly(text: str) -> MPoly:
    """Read a TeX display (sum of products) into an MPoly.

    ``f_{1 2}`` becomes coefficient symbol f1_12, g -> poly 2, h -> poly 3;
    ``T_{k}`` becomes the t-symbol t_k.  An outer ``\\dfrac{a}{b} \\left( ... \\right)``
    is applied as a scalar.
    """
    text = text.strip()
    outer = re.fullmatch(r"\\dfrac\{(\d+)\}\{(\d+)\}\s*\\left\((.*)\\right\)", text, re.S)
    if outer:
        return tex_to_mpoly(outer.group(3)).scale(mpq(int(outer.group(1)), int(outer.group(2))))
    total = MPoly()
    term = None
    sign = 1
    last_factor = None
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot read TeX near {text[pos:pos + 30]!r}")
        pos = m.end()
        if m.group("op"):
            if term is not None:
                total = total + term.scale(sign)
            term, last_factor = None, None
            sign = 1 if m.group("op") == "+" else -1
            continue
        if term is None:
            term = MPoly.constant(1)
        if m.group("exp"):
            term = term * last_factor ** (int(m.group("exp")) - 1)
            continue
        if m.group("fn"):
            factor = MPoly.constant(mpq(int(m.group("fn")), int(m.group("fd"))))
        elif m.group("rat"):
            factor = MPoly.constant(mpq(m.group("rat")))
        elif m.group("int"):
            factor = MPoly.constant(int(m.group("int")))
        elif m.group("coef"):
            index = sorted(int(c) for c in m.group("idx") if c != " ")
            factor = MPoly.symbol(coeff_symbol(_POLY_LETTER[m.group("coef")], index))
        else:
            factor = MPoly.symbol(t_symbol(int(m.group("tr"))))
        term = term * factor
        last_factor = factor
    if term is not None:
        total = total + term.scale(sign)
    return total


@pytest.fixture(scope="session")
def sym22():
    return build_symbolic(2, [2, 2])


@pytest.fixture(scope="session")
def sym33():
    return build_symbolic(2, [3, 3])


@pytest.fixture(scope="session")
def sym222():
    return build_symbolic(3, [2, 2, 2])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
