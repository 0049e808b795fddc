"""Command-line front end.

Exit codes: 0 success, 1 a ``check`` suite failed, 2 input error, 3 budget refusal.
Documents go to stdout only after they are complete; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from pathlib import Path

from .errors import BudgetExceeded, InputError
from .exactpoly import MPoly, coeff_symbol, parse
from .resultant import (
    GradingMode,
    determinant,
    determinant_special,
    resultant,
    solvability_probe,
    sylvester_resultant,
)
from .schur import SchurMethod, multi_schur, schur_poly
from .system import (
    build_symbolic,
    degree_data,
    force_common_root,
    from_json,
    random_dense,
)
from .traces import (
    DEFAULT_BUDGET,
    TraceTable,
    estimate_candidates,
    gradings_in_box,
    gradings_up_to,
    naive_trace_oracle,
)

SCHEMA = 1


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty integer list")
    return values


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _load_json_arg(value: str):
    path = Path(value)
    if path.exists():
        value = path.read_text()
    try:
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc


def _add_system_source(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--degrees", type=_int_list, help="degrees r1,...,rn of a generic symbolic system")
    group.add_argument("--input", help="path to a system JSON document")
    group.add_argument("--json", dest="inline", help="inline system JSON document")
    p.add_argument("--symbolic", action="store_true", help="generic symbolic coefficients (default with --degrees)")


def _system_from(args):
    if args.degrees is not None:
        return build_symbolic(len(args.degrees), args.degrees)
    if args.input is not None:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from exc
        return from_json(text)
    return from_json(args.inline)


def _emit_poly(p: MPoly, fmt: str, extra: dict | None = None) -> str:
    if fmt == "json":
        doc = {"schema": SCHEMA, **(extra or {}), "value": str(p), "term_count": len(p)}
        return json.dumps(doc, indent=2)
    return str(p)


def cmd_resultant(args) -> str:
    system = _system_from(args)
    mode = GradingMode(args.mode)
    res = resultant(system, mode, budget=args.budget, jobs=args.jobs)
    meta = {
        "degrees": list(system.degrees),
        "mode": mode.value,
        "d_vec": list(res.degree_data.d_vec),
        "d_total": res.degree_data.d_total,
    }
    if args.stats_only:
        doc = {"schema": SCHEMA, **meta, "term_count": res.term_count, "budget": res.trace_budget_report}
        if args.format == "text":
            return "\n".join(f"{k}: {v}" for k, v in doc.items())
        return json.dumps(doc, indent=2)
    return _emit_poly(res.value, args.format or "text", meta)


def cmd_traces(args) -> str:
    system = _system_from(args)
    table = TraceTable(system, args.budget)
    if args.kvec is not None:
        if len(args.kvec) != system.n:
            raise InputError(f"--kvec needs {system.n} entries")
        kvecs = [tuple(args.kvec)]
        aggregated = {}
    else:
        kmax = args.max_k or degree_data(system.degrees).d_total
        kvecs = gradings_up_to(system.n, kmax)
        table.check_budget(kvecs)
        table.fill(kvecs, jobs=args.jobs)
        aggregated = {str(k): str(table.aggregated(k)) for k in range(1, kmax + 1)}
    traces = {",".join(map(str, k)): str(table[k]) for k in kvecs}
    if args.format == "text":
        lines = [f"T[{k}] = {v}" for k, v in traces.items()]
        lines += [f"T_{k} = {v}" for k, v in aggregated.items()]
        return "\n".join(lines)
    doc = {"schema": SCHEMA, "degrees": list(system.degrees), "traces": traces}
    if aggregated:
        doc["aggregated"] = aggregated
    return json.dumps(doc, indent=2)


def _t_table(raw, scalar: bool) -> dict:
    if not isinstance(raw, dict):
        raise InputError("t-table must be a JSON object")
    out = {}
    for key, value in raw.items():
        try:
            idx = tuple(int(x) for x in str(key).split(","))
        except ValueError as exc:
            raise InputError(f"bad t-table key {key!r}") from exc
        if not isinstance(value, (str, int)):
            raise InputError("t-table values must be strings (polynomials or rationals)")
        out[idx[0] if scalar else idx] = parse(str(value))
    return out


def cmd_schur(args) -> str:
    t = None
    if args.k is not None:
        if args.t_table:
            t = _t_table(_load_json_arg(args.t_table), scalar=True)
        method = SchurMethod(args.method or "recurrence")
        value = schur_poly(args.k, t, method)
    else:
        if args.t_table:
            t = _t_table(_load_json_arg(args.t_table), scalar=False)
        method = SchurMethod(args.method or "series_exp")
        value = multi_schur(tuple(args.target), t, method)
    return _emit_poly(value, args.format or "text")


def cmd_det(args) -> str:
    if args.matrix is not None:
        raw = _load_json_arg(args.matrix)
        if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
            raise InputError("--matrix must be a JSON list of rows")
        matrix = [[parse(str(x)) for x in row] for row in raw]
    else:
        matrix = [
            [MPoly.symbol(coeff_symbol(i + 1, (j + 1,))) for j in range(args.n)]
            for i in range(args.n)
        ]
    value = determinant_special(matrix)
    return _emit_poly(value, args.format or "text")


def cmd_probe(args) -> str:
    if args.random is not None or args.force_root is not None:
        if args.degrees is None:
            raise InputError("--random/--force-root need --degrees")
        n = len(args.degrees)
        if args.force_root is not None:
            system = force_common_root(n, args.degrees, args.force_root, args.seed)
        else:
            system = random_dense(n, args.degrees, args.random)
    else:
        system = _system_from(args)
    value = solvability_probe(system, budget=args.budget)
    if args.format == "json":
        return json.dumps(
            {"schema": SCHEMA, "degrees": list(system.degrees), "value": str(value), "vanishes": value == 0},
            indent=2,
        )
    return str(value)


def _check_suite(budget: int) -> dict:
    results = {}

    for degrees in ([1, 1], [1, 2], [2, 2], [2, 3], [3, 3]):
        s = build_symbolic(2, degrees)
        ours = resultant(s, budget=budget).value
        sylv = sylvester_resultant(*s.polys)
        sign = 1 if ours == sylv else (-1 if ours == -sylv else 0)
        results[f"sylvester {degrees}"] = {"pass": sign != 0, "sign": sign}

    for degrees in ([2, 2], [1, 2, 1]):
        s = build_symbolic(len(degrees), degrees)
        ok = True
        for kvec in gradings_up_to(s.n, 4):
            if sum(r * k for r, k in zip(degrees, kvec)) > 8:
                continue
            table = TraceTable(s, budget)
            ok &= table[kvec] == naive_trace_oracle(s, kvec)
        results[f"naive traces {degrees}"] = {"pass": bool(ok)}

    for n in (1, 2, 3):
        s = build_symbolic(n, [1] * n)
        matrix = [[c for _, c in p.coeffs] for p in s.polys]
        ok = resultant(s, budget=budget).value == determinant(matrix) == determinant_special(matrix)
        results[f"determinant n={n}"] = {"pass": bool(ok)}

    for degrees, root in (([2, 2], (1, 2)), ([1, 1, 1], (1, -1, 3)), ([2, 3], (3, 1))):
        vals = [solvability_probe(force_common_root(len(degrees), degrees, root, seed)) for seed in range(3)]
        results[f"forced root {degrees}"] = {"pass": all(v == 0 for v in vals)}
    return results


def cmd_check(args) -> str:
    results = _check_suite(args.budget)
    args._failed = not all(r["pass"] for r in results.values())
    if args.format == "text":
        return "\n".join(f"{'PASS' if r['pass'] else 'FAIL'}  {name}" for name, r in results.items())
    return json.dumps({"schema": SCHEMA, "results": results}, indent=2)


def cmd_stats(args) -> str:
    dd = degree_data(args.degrees)
    multi = gradings_in_box(dd.d_vec)
    single = gradings_up_to(len(args.degrees), dd.d_total)
    doc = {
        "schema": SCHEMA,
        "degrees": args.degrees,
        "d_vec": list(dd.d_vec),
        "d_total": dd.d_total,
        "multi_gradings": len(multi),
        "multi_max_candidates": max(estimate_candidates(args.degrees, k) for k in multi),
        "single_gradings": len(single),
        "single_max_candidates": max(estimate_candidates(args.degrees, k) for k in single),
    }
    if args.format == "text":
        return "\n".join(f"{k}: {v}" for k, v in doc.items())
    return json.dumps(doc, indent=2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=None)
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="cap on exponent-matrix candidates per trace")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for trace tables")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="resultants", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resultant", parents=[common], help="resultant of a system")
    _add_system_source(p)
    p.add_argument("--mode", choices=["multi", "single"], default="multi")
    p.add_argument("--stats-only", action="store_true", help="report term count and degrees only")
    p.set_defaults(func=cmd_resultant)

    p = sub.add_parser("traces", parents=[common], help="trace table as JSON")
    _add_system_source(p)
    p.add_argument("--max-k", type=_positive, help="all gradings with |k| <= K (default d)")
    p.add_argument("--kvec", type=_int_list, help="a single grading vector")
    p.set_defaults(func=cmd_traces)

    p = sub.add_parser("schur", parents=[common], help="Schur / multi-Schur polynomial")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--k", type=int)
    target.add_argument("--target", type=_int_list)
    p.add_argument("--method", choices=[m.value for m in SchurMethod])
    p.add_argument("--t-table", help="JSON object (inline or path) mapping index -> value")
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("det", parents=[common], help="determinant through traces of powers")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=_positive)
    src.add_argument("--matrix", help="JSON list of rows of polynomial strings")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("probe", parents=[common], help="exact numeric resultant value")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--degrees", type=_int_list)
    group.add_argument("--input")
    group.add_argument("--json", dest="inline")
    p.add_argument("--symbolic", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--random", type=int, metavar="SEED", help="random dense system")
    p.add_argument("--force-root", type=_int_list, help="random system vanishing at this root")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("check", parents=[common], help="run the oracle cross-checks")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("stats", parents=[common], help="degree data and plan sizes")
    p.add_argument("--degrees", type=_int_list, required=True)
    p.set_defaults(func=cmd_stats)
    return parser


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        document = args.func(args)
    except BudgetExceeded as exc:
        detail = f" at grading {list(exc.grading)}" if exc.grading is not None else ""
        print(f"error: budget exceeded{detail}: {exc}", file=stderr)
        return 3
    except (InputError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    print(document, file=stdout)
    return 1 if getattr(args, "_failed", False) else 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
