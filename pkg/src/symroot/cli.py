"""Command-line front end.

Subcommands: root (dominant-root run), roots (shift search), trace (word
iteration), table (fixed-length sequence table), delian (cube-doubling
construction and SVG), verify (float cross-check).  Output is deterministic:
the same invocation always produces byte-identical bytes, and no data output
contains timestamps.

Exit codes: 0 success/converged, 1 usage or parse error, 2 oscillating,
3 budget exhausted, 4 no roots found, 5 degenerate start.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .convergence import (
    BUDGET_EXHAUSTED,
    CONVERGED,
    DEGENERATE_START,
    OSCILLATING,
    RootEstimate,
    StoppingRule,
    TraceRow,
)
from .delian import ConstructionError, delian_trace, emit_svg
from .oracle import OracleError, all_roots_float, dominance_gap
from .polynomial import (
    IntPolynomial,
    PolynomialError,
    ReplacementMatrix,
    build_replacement_matrix,
    parse_polynomial,
    shift_matrix,
)
from .recurrence import initial_window, recurrence_step, rows_to_csv, rows_to_json, run as run_recurrence, seed_sequences
from .rewrite import (
    Alphabet,
    count_symbols,
    iterate_words,
    rules_from_matrix,
    run_count_iteration,
    trace_lines,
)
from .shifts import SearchConfig, find_real_roots
from .polynomial import scaled_char_coeffs

TOL_ENV_VAR = "SYMROOT_TOL"

_STATUS_EXIT = {
    CONVERGED: 0,
    OSCILLATING: 2,
    BUDGET_EXHAUSTED: 3,
    DEGENERATE_START: 5,
}


class CliError(Exception):
    """Usage or input error; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep exit codes under our control
        raise CliError(message)


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None:
        return 1e-12
    try:
        value = float(raw)
    except ValueError:
        raise CliError(f"{TOL_ENV_VAR} must be a float, got {raw!r}")
    if not 0 < value < 1:
        raise CliError(f"{TOL_ENV_VAR} must be in (0, 1), got {raw!r}")
    return value


def _build_parser() -> _Parser:
    parser = _Parser(prog="symroot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def poly_arg(p):
        p.add_argument("polynomial", help="coefficient list '2,2,-1' or term sum '2x^2+2x-1'")

    def shift_arg(p):
        p.add_argument("--shift", nargs=2, type=int, metavar=("ALPHA", "BETA"),
                       help="iterate alpha*I + beta*M instead of the plain matrix")

    p_root = sub.add_parser("root", help="find the dominant real root")
    poly_arg(p_root)
    p_root.add_argument("--engine", choices=["recurrence", "rewrite"], default="recurrence")
    p_root.add_argument("--mode", choices=["counts", "explicit"], default="counts",
                        help="explicit prints the rewritten words (rewrite engine only)")
    p_root.add_argument("--iters", type=int, help="run exactly this many steps")
    p_root.add_argument("--budget", type=int, default=10_000, help="step budget when converging")
    p_root.add_argument("--tol", type=float, help=f"convergence tolerance (default {TOL_ENV_VAR} or 1e-12)")
    p_root.add_argument("--start", help="start word in display glyphs (default: the first letter)")
    shift_arg(p_root)
    p_root.add_argument("--format", choices=["table", "csv", "json"], default="table")

    p_roots = sub.add_parser("roots", help="search integer shifts for real roots")
    poly_arg(p_roots)
    p_roots.add_argument("--alpha-max", type=int, default=3)
    p_roots.add_argument("--beta-max", type=int, default=1)
    p_roots.add_argument("--budget", type=int, default=2000, help="step budget per shift")
    p_roots.add_argument("--tol", type=float)
    p_roots.add_argument("--format", choices=["json", "table"], default="json")

    p_trace = sub.add_parser("trace", help="print the rewritten words")
    poly_arg(p_trace)
    p_trace.add_argument("--steps", type=int, default=4)
    p_trace.add_argument("--start", help="start word in display glyphs")
    p_trace.add_argument("--counts", action="store_true", help="append signed counts per line")
    shift_arg(p_trace)

    p_table = sub.add_parser("table", help="print the sequence table for a fixed step count")
    poly_arg(p_table)
    p_table.add_argument("--steps", type=int, default=8)
    p_table.add_argument("--s0", help="start vector, comma separated (default 1,0,...,0)")
    shift_arg(p_table)
    p_table.add_argument("--format", choices=["table", "csv", "json"], default="table")

    p_delian = sub.add_parser("delian", help="cube-doubling construction")
    p_delian.add_argument("--iterations", type=int, default=5)
    p_delian.add_argument("--theta", type=float, default=53.13, help="incline angle in degrees")
    p_delian.add_argument("--unit-px", type=int, default=10, help="pixels per unit segment")
    p_delian.add_argument("--out", help="write the SVG here")
    p_delian.add_argument("--format", choices=["text", "json"], default="text")

    p_verify = sub.add_parser("verify", help="cross-check against the float root finder")
    poly_arg(p_verify)
    p_verify.add_argument("--tol", type=float)
    p_verify.add_argument("--format", choices=["text", "json"], default="text")

    return parser


def _matrix_for(p: IntPolynomial, shift: Optional[Sequence[int]]) -> ReplacementMatrix:
    matrix = build_replacement_matrix(p)
    if shift is not None:
        matrix = shift_matrix(matrix, shift[0], shift[1])
    return matrix


def _shift_json(matrix: ReplacementMatrix) -> Optional[dict]:
    if matrix.shift is None:
        return None
    return {"alpha": matrix.shift[0], "beta": matrix.shift[1]}


def _estimate_json(est: RootEstimate) -> dict:
    return {
        "rational": str(est.value) if est.value is not None else None,
        "float": est.float_value,
    }


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _print_table(rows: Sequence[TraceRow]) -> None:
    if not rows:
        return
    m = len(rows[0].values)
    header = ["j"] + [f"S{i}" for i in range(1, m + 1)] + ["estimate"]
    body = []
    for row in rows:
        ratio = "" if row.ratio is None else f"{float(row.ratio):.10g}"
        body.append([str(row.step)] + [str(v) for v in row.values] + [ratio])
    widths = [max(len(line[i]) for line in [header] + body) for i in range(len(header))]
    for line in [header] + body:
        print("  ".join(cell.rjust(w) for cell, w in zip(line, widths)))


def _summary_lines(p: IntPolynomial, est: RootEstimate) -> list[str]:
    lines = [f"status: {est.status} after {est.iterations} steps"]
    if est.value is not None:
        lines.append(f"root ~ {est.float_value!r} = {est.value} (residual {est.residual!r})")
    if est.status == OSCILLATING:
        lines.append(
            "dominant eigenvalue moduli are tied; retry with --shift ALPHA BETA "
            f"or run: symroot roots \"{p}\""
        )
    return lines


def cmd_root(args) -> int:
    p = parse_polynomial(args.polynomial)
    if args.mode == "explicit" and args.engine != "rewrite":
        raise CliError("--mode explicit requires --engine rewrite")
    tol = args.tol if args.tol is not None else _default_tol()

    if p.degree == 1:
        from .shifts import find_dominant_real_root

        est = find_dominant_real_root(p)
        if args.format == "json":
            _print_json({
                "polynomial": str(p),
                "engine": args.engine,
                "mode": args.mode,
                "shift": None,
                "status": est.status,
                "iterations": est.iterations,
                "estimate": _estimate_json(est),
                "residual": est.residual,
                "rows": [],
                "words": None,
                "words_truncated": None,
            })
        else:
            for line in _summary_lines(p, est):
                print(line)
        return _STATUS_EXIT[est.status]

    matrix = _matrix_for(p, args.shift)
    max_steps = args.iters if args.iters is not None else args.budget
    if max_steps < 0:
        raise CliError("--iters must be >= 0")
    rule = StoppingRule(tol=tol, max_steps=max_steps)

    alphabet = Alphabet.default(p.degree)
    start_word = alphabet.parse(args.start) if args.start else (1,)
    n0 = count_symbols(start_word, p.degree)
    if not any(n0):
        raise CliError("start word has zero signed counts; pick another")

    words_out: Optional[list[str]] = None
    words_truncated: Optional[bool] = None
    if args.mode == "explicit":
        rules = rules_from_matrix(matrix, alphabet)
        word_trace = iterate_words(rules, start_word, max_steps)
        words_out = [alphabet.to_string(w) for w in word_trace.words]
        words_truncated = word_trace.truncated

    if args.engine == "recurrence":
        est, rows = run_recurrence(matrix, s0=n0, stop=rule)
    else:
        est, rows = run_count_iteration(matrix, n0=n0, stop=rule)

    if args.format == "json":
        _print_json({
            "polynomial": str(p),
            "engine": args.engine,
            "mode": args.mode,
            "shift": _shift_json(matrix),
            "status": est.status,
            "iterations": est.iterations,
            "estimate": _estimate_json(est),
            "residual": est.residual,
            "rows": rows_to_json(rows),
            "words": words_out,
            "words_truncated": words_truncated,
        })
    elif args.format == "csv":
        sys.stdout.write(rows_to_csv(rows))
        for line in _summary_lines(p, est):
            print(line, file=sys.stderr)
    else:
        if words_out is not None:
            for line in words_out:
                print(line)
            if words_truncated:
                print("... word cap reached; remaining steps counted only")
            print()
        _print_table(rows)
        for line in _summary_lines(p, est):
            print(line)
    return _STATUS_EXIT[est.status]


def cmd_roots(args) -> int:
    p = parse_polynomial(args.polynomial)
    if args.alpha_max < 1 or args.beta_max < 1:
        raise CliError("--alpha-max and --beta-max must be >= 1")
    tol = args.tol if args.tol is not None else _default_tol()
    config = SearchConfig(budget=args.budget, tol=tol)
    result = find_real_roots(p, args.alpha_max, args.beta_max, config)

    if args.format == "json":
        _print_json({
            "polynomial": str(p),
            "alpha_max": args.alpha_max,
            "beta_max": args.beta_max,
            "budget": args.budget,
            "tol": tol,
            "roots": [
                {
                    "value": r.value,
                    "witness": str(r.witness),
                    "shift": [r.shift[0], r.shift[1]],
                    "discoveries": r.discoveries,
                    "iterations": r.iterations,
                    "residual": r.residual,
                    "certificate": r.certificate,
                }
                for r in result.roots
            ],
            "candidates": [
                {
                    "alpha": c.alpha,
                    "beta": c.beta,
                    "status": c.estimate.status,
                    "iterations": c.estimate.iterations,
                    "estimate": str(c.estimate.value) if c.estimate.value is not None else None,
                    "estimate_float": c.estimate.float_value,
                    "certificate": c.certificate,
                }
                for c in result.candidates
            ],
        })
    else:
        if result.roots:
            for r in result.roots:
                print(
                    f"root ~ {r.value!r} = {r.witness} "
                    f"(shift {r.shift[0]},{r.shift[1]}; {r.iterations} steps; "
                    f"found {r.discoveries}x; {r.certificate})"
                )
        else:
            print("no real roots found in the shift range")
    return 0 if result.roots else 4


def cmd_trace(args) -> int:
    p = parse_polynomial(args.polynomial)
    if args.steps < 0:
        raise CliError("--steps must be >= 0")
    matrix = _matrix_for(p, args.shift)
    alphabet = Alphabet.default(p.degree)
    rules = rules_from_matrix(matrix, alphabet)
    start_word = alphabet.parse(args.start) if args.start else (1,)
    word_trace = iterate_words(rules, start_word, args.steps)
    for line in trace_lines(alphabet, word_trace.words, with_counts=args.counts):
        print(line)
    if word_trace.truncated:
        print(f"... word cap reached after step {len(word_trace.words) - 1}")
    return 0


def cmd_table(args) -> int:
    p = parse_polynomial(args.polynomial)
    if args.steps < 0:
        raise CliError("--steps must be >= 0")
    if p.degree < 2:
        raise CliError("table needs degree >= 2")
    matrix = _matrix_for(p, args.shift)
    m = matrix.m
    if args.s0:
        try:
            s0 = tuple(int(tok) for tok in args.s0.split(","))
        except ValueError:
            raise CliError(f"--s0 must be a comma-separated integer list, got {args.s0!r}")
    else:
        s0 = (1,) + (0,) * (m - 1)

    # fixed-length table: no stopping rule, exactly steps+1 rows
    seed = seed_sequences(matrix, s0)
    coeffs = scaled_char_coeffs(matrix)
    rows = []
    for j, vec in enumerate(seed.columns[: args.steps + 1]):
        ratio = Fraction(vec[-2], vec[-1]) if vec[-1] != 0 else None
        rows.append(TraceRow(j, vec, ratio))
    window = initial_window(seed)
    while window.step < args.steps:
        window = recurrence_step(coeffs, window)
        vec = window.newest
        ratio = Fraction(vec[-2], vec[-1]) if vec[-1] != 0 else None
        rows.append(TraceRow(window.step, vec, ratio))

    if args.format == "json":
        _print_json({
            "polynomial": str(p),
            "shift": _shift_json(matrix),
            "rows": rows_to_json(rows),
        })
    elif args.format == "csv":
        sys.stdout.write(rows_to_csv(rows))
    else:
        _print_table(rows)
    return 0


def cmd_delian(args) -> int:
    if args.iterations < 0:
        raise CliError("--iterations must be >= 0")
    if args.unit_px < 1:
        raise CliError("--unit-px must be >= 1")
    try:
        trace = delian_trace(args.iterations, theta_deg=args.theta, unit=args.unit_px)
    except ConstructionError as exc:
        raise CliError(str(exc))
    if args.out:
        emit_svg(trace, args.out)

    blue, green, red = trace.counts
    ratio = trace.de_ratio
    if args.format == "json":
        de_cubed_minus_2 = float(ratio**3 - 2) if ratio is not None else None
        _print_json({
            "iterations": args.iterations,
            "counts": {"blue": str(blue), "green": str(green), "red": str(red)},
            "de": (
                {"rational": str(ratio), "float": float(ratio)}
                if ratio is not None
                else None
            ),
            "de_cubed_minus_2": de_cubed_minus_2,
            "theta_deg": trace.theta_deg,
            "direction": [str(trace.direction[0]), str(trace.direction[1])],
            "unit": str(trace.unit),
            "svg": args.out if args.out else None,
        })
    else:
        print(f"iterations: {args.iterations}")
        print(f"counts: blue={blue} green={green} red={red}")
        if ratio is not None:
            print(f"DE = {ratio} unit ~ {float(ratio)!r} unit")
            print(f"DE^3 - 2 = {float(ratio**3 - 2)!r}")
        else:
            print("no red letters yet; the construction needs more iterations")
        if args.out:
            print(f"svg written to {args.out}")
    return 0


def cmd_verify(args) -> int:
    p = parse_polynomial(args.polynomial)
    tol = args.tol if args.tol is not None else _default_tol()
    try:
        roots = all_roots_float(p)
    except OracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    agreement = None
    dominance = None
    if p.degree >= 2:
        matrix = build_replacement_matrix(p)
        report = dominance_gap(p, matrix)
        finite_gap = report.gap if report.gap is not None and report.gap != float("inf") else None
        dominance = {"kind": report.kind, "gap": finite_gap}
        if report.kind == "unique-dominant" and abs(report.dominant_root.imag) <= 1e-6:
            est, _ = run_recurrence(matrix, stop=StoppingRule(tol=tol))
            if est.status == CONVERGED:
                agreement = {
                    "status": est.status,
                    "engine_root": est.float_value,
                    "difference": abs(est.float_value - report.dominant_root.real),
                }
            else:
                agreement = {"status": est.status, "engine_root": None, "difference": None}

    if args.format == "json":
        _print_json({
            "polynomial": str(p),
            "roots": [
                {"re": z.real, "im": z.imag, "multiplicity": mult}
                for z, mult in roots.distinct()
            ],
            "max_residual": roots.max_residual,
            "dominance": dominance,
            "engine_agreement": agreement,
        })
    else:
        print(f"p = {p}")
        for z, mult in roots.distinct():
            flag = f" (multiplicity {mult})" if mult > 1 else ""
            print(f"root ~ {z.real!r} + {z.imag!r}i{flag}")
        print(f"max residual: {roots.max_residual!r}")
        if dominance is not None:
            gap = dominance["gap"]
            print(f"dominance: {dominance['kind']}" + (f" (gap {gap!r})" if gap is not None else ""))
        if agreement is not None:
            if agreement["difference"] is not None:
                print(f"engine agrees to {agreement['difference']!r}")
            else:
                print(f"engine status: {agreement['status']}")
    return 0


_COMMANDS = {
    "root": cmd_root,
    "roots": cmd_roots,
    "trace": cmd_trace,
    "table": cmd_table,
    "delian": cmd_delian,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except (CliError, PolynomialError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
