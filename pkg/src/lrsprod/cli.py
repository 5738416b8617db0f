"""Command-line front end.

Subcommands: ``wedge`` (multiplicity arithmetic), ``factor``, ``mul`` (the
product characteristic polynomial with its class table), ``verify``
(formula against the brute-force sequence oracle), ``table`` (a rectangle
of wedge values), and ``batch`` (a file of verify lines).

Exit codes: 0 on success (for verify/batch: everything EQUAL), 1 for
computation failures or DIFFER, 2 for usage errors including malformed
field or polynomial syntax.  ``--json`` switches every command to a single
JSON object with a stable envelope: command, ok, seed, result.  The seed
defaults to the LRS_SEED environment variable, then 0.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import fields, seq, spectrum
from .poly import Polynomial, PolyParseError, factor, format_polynomial, parse_polynomial
from .wedge import WedgeContext, wedge, wedge_details

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _ComputationError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("LRS_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"LRS_SEED must be an integer, got {raw!r}")


def _field_arg(text: str):
    try:
        return fields.parse_field(text)
    except (ValueError, PolyParseError) as exc:
        raise _UsageError(f"bad field {text!r}: {exc}")


def _poly_arg(text: str, field) -> Polynomial:
    try:
        return parse_polynomial(text, field)
    except PolyParseError as exc:
        caret = " " * exc.position + "^"
        raise _UsageError(
            f"malformed polynomial: {exc.message}\n  {text}\n  {caret}"
        )


def _wedge_ctx(char: int) -> WedgeContext:
    try:
        return WedgeContext(char)
    except ValueError as exc:
        raise _UsageError(str(exc))


# ---------------------------------------------------------------------------
# Command handlers: each returns (exit_code, result_dict, plain_text_lines)
# ---------------------------------------------------------------------------


def _cmd_wedge(args, seed):
    ctx = _wedge_ctx(args.char)
    if args.i < 0 or args.j < 0:
        raise _UsageError("wedge arguments must be non-negative")
    details = wedge_details(args.i, args.j, ctx)
    lines = [str(details.value)]
    explain = None
    if args.explain:
        if details.q is None:
            reason = (
                "value is i + j - 1 in characteristic 0"
                if ctx.characteristic == 0 and args.i and args.j
                else "zero absorbs"
            )
            lines.append(reason)
            explain = {"rule": reason}
        else:
            di = list(details.expansion_i.digits)
            dj = list(details.expansion_j.digits)
            lines.append(f"digits of i-1 (base {args.char}, low first): {di}")
            lines.append(f"digits of j-1 (base {args.char}, low first): {dj}")
            lines.append(f"q = {details.q}")
            explain = {"digits_i": di, "digits_j": dj, "q": details.q}
    result = {
        "i": args.i,
        "j": args.j,
        "characteristic": args.char,
        "value": details.value,
        "explain": explain,
    }
    return 0, result, lines


def _cmd_table(args, seed):
    ctx = _wedge_ctx(args.char)
    if args.imax < 1 or args.jmax < 1:
        raise _UsageError("table bounds must be at least 1")
    header = ["i\\j"] + [str(j) for j in range(1, args.jmax + 1)]
    rows = []
    for i in range(1, args.imax + 1):
        rows.append([wedge(i, j, ctx) for j in range(1, args.jmax + 1)])
    lines = ["\t".join(header)]
    for i, row in enumerate(rows, start=1):
        lines.append("\t".join([str(i)] + [str(v) for v in row]))
    result = {
        "characteristic": args.char,
        "imax": args.imax,
        "jmax": args.jmax,
        "rows": rows,
    }
    return 0, result, lines


def _cmd_factor(args, seed):
    field = _field_arg(args.field)
    P = _poly_arg(args.poly, field)
    try:
        fac = factor(P, rng_seed=seed)
    except ValueError as exc:
        raise _ComputationError(str(exc))
    pieces = []
    if not fac.unit.is_one:
        pieces.append(fields.format_element(fac.unit))
    for g, m in fac.factors:
        text = f"({format_polynomial(g)})"
        pieces.append(text if m == 1 else f"{text}^{m}")
    if fac.remainder is not None:
        pieces.append(f"[unfactored: {format_polynomial(fac.remainder)}]")
    if not pieces:
        pieces.append("1")
    lines = [f"{format_polynomial(P)} = {' * '.join(pieces)}"]
    result = {
        "field": fields.format_field(field),
        "input": format_polynomial(P),
        "unit": fields.format_element(fac.unit),
        "factors": [[format_polynomial(g), m] for g, m in fac.factors],
        "remainder": None
        if fac.remainder is None
        else format_polynomial(fac.remainder),
    }
    return 0, result, lines


def _parse_poly_list(args, field):
    polys = [_poly_arg(text, field) for text in args.polys]
    if len(polys) < 2:
        raise _UsageError("need at least two polynomials")
    return polys


def _cmd_mul(args, seed):
    field = _field_arg(args.field)
    polys = _parse_poly_list(args, field)
    try:
        report = spectrum.product_report(polys, seed=seed, cap=args.cap)
    except ValueError as exc:
        raise _ComputationError(str(exc))
    theta_text = (
        "{" + ",".join(str(i) for i in report.theta) + "}" if report.theta else "{}"
    )
    lines = [
        f"result: {format_polynomial(report.result)}",
        f"rho: {report.rho}",
        f"theta: {theta_text}",
        f"upsilon: {format_polynomial(report.upsilon)}",
    ]
    if report.classes:
        lines.append("classes:")
        lines.append("value\tmultiplicity\twitness")
        for c in report.classes:
            witness = ", ".join(fields.format_element(w) for w in c.witness)
            lines.append(f"{fields.format_element(c.product_value)}\t{c.best}\t({witness})")
    result = {
        "field": fields.format_field(field),
        "inputs": [format_polynomial(P) for P in polys],
        "rho": report.rho,
        "theta": list(report.theta),
        "upsilon": format_polynomial(report.upsilon),
        "result": format_polynomial(report.result),
        "spectrum": report.upsilon_spectrum.to_json_dict(),
        "classes": [
            {
                "value": fields.format_element(c.product_value),
                "multiplicity": c.best,
                "witness": [fields.format_element(w) for w in c.witness],
                "tuples": c.tuple_count,
            }
            for c in report.classes
        ],
    }
    return 0, result, lines


def _verify_once(polys, seed, cap, budget):
    formula = spectrum.product_char_poly(polys, seed=seed, cap=cap)
    oracle = seq.oracle_product_char_poly(polys, budget=budget)
    return formula, oracle


def _cmd_verify(args, seed):
    field = _field_arg(args.field)
    polys = _parse_poly_list(args, field)
    try:
        formula, oracle = _verify_once(polys, seed, args.cap, args.budget)
    except ValueError as exc:
        raise _ComputationError(str(exc))
    equal = formula == oracle
    lines = [
        "EQUAL" if equal else "DIFFER",
        f"formula: {format_polynomial(formula)}",
        f"oracle:  {format_polynomial(oracle)}",
    ]
    result = {
        "field": fields.format_field(field),
        "inputs": [format_polynomial(P) for P in polys],
        "equal": equal,
        "formula": format_polynomial(formula),
        "oracle": format_polynomial(oracle),
    }
    return (0 if equal else 1), result, lines


def _cmd_batch(args, seed):
    try:
        with open(args.file, "r", encoding="utf-8") as handle:
            raw_lines = handle.read().splitlines()
    except OSError as exc:
        raise _UsageError(f"cannot read batch file: {exc}")
    entries = []
    lines = []
    counts = {"EQUAL": 0, "DIFFER": 0, "FAILED": 0}
    for lineno, raw in enumerate(raw_lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        status, detail = _batch_line(text, seed, args.cap, args.budget)
        counts[status] += 1
        entries.append({"line": lineno, "status": status, "detail": detail})
        lines.append(f"line {lineno}: {status} {detail}".rstrip())
    total = sum(counts.values())
    summary = f"{counts['EQUAL']}/{total} EQUAL"
    if counts["DIFFER"]:
        summary += f", {counts['DIFFER']} DIFFER"
    if counts["FAILED"]:
        summary += f", {counts['FAILED']} FAILED"
    lines.append(summary)
    ok = counts["DIFFER"] == 0 and counts["FAILED"] == 0
    result = {"cases": entries, "counts": counts, "total": total}
    return (0 if ok else 1), result, lines


def _batch_line(text, seed, cap, budget):
    parts = [p.strip() for p in text.split(";")]
    if len(parts) < 3:
        return "FAILED", "expected FIELD ; P1 ; P2 [; ...]"
    try:
        field = _field_arg(parts[0])
        polys = [_poly_arg(p, field) for p in parts[1:]]
        formula, oracle = _verify_once(polys, seed, cap, budget)
    except (_UsageError, _ComputationError, ValueError) as exc:
        return "FAILED", str(exc).splitlines()[0]
    if formula == oracle:
        return "EQUAL", format_polynomial(formula)
    return "DIFFER", (
        f"formula {format_polynomial(formula)} vs oracle {format_polynomial(oracle)}"
    )


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrsprod",
        description="Exact characteristic polynomials of termwise products "
        "of linear recurrence sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, include_seed=True):
        p.add_argument("--json", action="store_true", help="emit one JSON object")
        if include_seed:
            p.add_argument(
                "--seed",
                type=int,
                default=None,
                help="seed for randomised factoring steps (default: LRS_SEED or 0)",
            )

    p = sub.add_parser("wedge", help="multiplicity of a product of two roots")
    p.add_argument("--char", type=int, required=True, help="0 or a prime")
    p.add_argument("--explain", action="store_true", help="show digit expansions")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    common(p, include_seed=False)

    p = sub.add_parser("table", help="rectangle of wedge values")
    p.add_argument("--char", type=int, required=True)
    p.add_argument("imax", type=int)
    p.add_argument("jmax", type=int)
    common(p, include_seed=False)

    p = sub.add_parser("factor", help="factor a polynomial")
    p.add_argument("--field", required=True, help="Q, GF(p), GF(p^k)[/modulus]")
    p.add_argument("poly")
    common(p)

    p = sub.add_parser("mul", help="characteristic polynomial of the product space")
    p.add_argument("--field", required=True)
    p.add_argument("--cap", type=int, default=spectrum.DEFAULT_TUPLE_CAP)
    p.add_argument("polys", nargs="+")
    common(p)

    p = sub.add_parser("verify", help="compare the formula against the sequence oracle")
    p.add_argument("--field", required=True)
    p.add_argument("--cap", type=int, default=spectrum.DEFAULT_TUPLE_CAP)
    p.add_argument("--budget", type=int, default=seq.DEFAULT_ORACLE_BUDGET)
    p.add_argument("polys", nargs="+")
    common(p)

    p = sub.add_parser("batch", help="run verify over a file of cases")
    p.add_argument("--cap", type=int, default=spectrum.DEFAULT_TUPLE_CAP)
    p.add_argument("--budget", type=int, default=seq.DEFAULT_ORACLE_BUDGET)
    p.add_argument("file")
    common(p)

    return parser


_HANDLERS = {
    "wedge": _cmd_wedge,
    "table": _cmd_table,
    "factor": _cmd_factor,
    "mul": _cmd_mul,
    "verify": _cmd_verify,
    "batch": _cmd_batch,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    as_json = args.json
    takes_seed = "seed" in vars(args)
    try:
        seed = None
        if takes_seed:
            seed = args.seed if args.seed is not None else _default_seed()
        code, result, lines = _HANDLERS[args.command](args, seed if seed is not None else 0)
    except _UsageError as exc:
        if as_json:
            _emit_json(args.command, False, None, {"error": str(exc)})
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    except _ComputationError as exc:
        if as_json:
            _emit_json(args.command, False, None, {"error": str(exc)})
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1
    if as_json:
        _emit_json(args.command, code == 0, seed, result)
    else:
        for line in lines:
            print(line)
    return code


def _emit_json(command, ok, seed, result):
    envelope = {"command": command, "ok": ok, "seed": seed, "result": result}
    print(json.dumps(envelope, indent=2, sort_keys=False))


if __name__ == "__main__":
    sys.exit(main())
