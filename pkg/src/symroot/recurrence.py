"""Big-integer recurrence engine.

Each matrix M of size m gives m integer sequences: sequence i starts with
component i of S0, M*S0, ..., M^(m-1)*S0, after which every sequence obeys the
same m-term recurrence whose coefficients are the characteristic coefficients
of M (the matrix satisfies its own characteristic polynomial, so stepping the
window is exactly multiplying the underlying vector by M, without the matrix).
The ratio of the two trailing sequences tends to the dominant-eigenvalue
root when that eigenvalue is unique.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .convergence import (
    BUDGET_EXHAUSTED,
    RootEstimate,
    RunTracker,
    StoppingRule,
    TraceRow,
)
from .polynomial import MatrixLike, ReplacementMatrix, coerce_rows, mat_vec, scaled_char_coeffs


@dataclass(frozen=True)
class SeedState:
    """Start vector and the m exactly-computed lead vectors S0 ... M^(m-1)*S0."""

    s0: tuple[int, ...]
    columns: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SequenceWindow:
    """Last m terms of each sequence, oldest first, plus the rescale log.

    Entries are the true sequence values divided by the product of recorded
    divisors; every cross-sequence ratio is unchanged by that division.
    """

    terms: tuple[tuple[int, ...], ...]
    step: int
    rescales: tuple[tuple[int, int], ...] = ()

    @property
    def newest(self) -> tuple[int, ...]:
        return tuple(seq[-1] for seq in self.terms)

    def max_bit_length(self) -> int:
        return max(abs(t).bit_length() for seq in self.terms for t in seq)


def seed_sequences(matrix: MatrixLike, s0: Sequence[int]) -> SeedState:
    """Exact lead vectors by repeated matrix-vector products."""
    rows = coerce_rows(matrix)
    m = len(rows)
    start = tuple(int(c) for c in s0)
    if len(start) != m:
        raise ValueError(f"start vector needs {m} components")
    if not any(start):
        raise ValueError("start vector must be nonzero")
    columns = [start]
    for _ in range(m - 1):
        columns.append(mat_vec(rows, columns[-1]))
    return SeedState(start, tuple(columns))


def initial_window(seed: SeedState) -> SequenceWindow:
    m = len(seed.s0)
    terms = tuple(tuple(seed.columns[j][i] for j in range(m)) for i in range(m))
    return SequenceWindow(terms, m - 1)


def recurrence_step(coeffs: Sequence[int], window: SequenceWindow) -> SequenceWindow:
    """Append the next term of every sequence and drop the oldest.

    With monic coefficients (1, c1, ..., cm) the new term is
    -(c1*S[j] + c2*S[j-1] + ... + cm*S[j-m+1]).
    """
    m = len(window.terms)
    if len(coeffs) != m + 1 or coeffs[0] != 1:
        raise ValueError("need monic characteristic coefficients of matching degree")
    new_terms = []
    for seq in window.terms:
        nxt = -sum(coeffs[k] * seq[m - k] for k in range(1, m + 1))
        new_terms.append(seq[1:] + (nxt,))
    return SequenceWindow(tuple(new_terms), window.step + 1, window.rescales)


def gcd_rescale(window: SequenceWindow) -> SequenceWindow:
    """Divide the whole window by its common gcd, recording the divisor.

    A no-op when the gcd is 0 or 1.  Ratios across sequences are unchanged.
    """
    g = math.gcd(*(t for seq in window.terms for t in seq))
    if g <= 1:
        return window
    terms = tuple(tuple(t // g for t in seq) for seq in window.terms)
    return SequenceWindow(terms, window.step, window.rescales + ((window.step, g),))


def run(
    matrix: ReplacementMatrix,
    s0: Optional[Sequence[int]] = None,
    stop: Optional[StoppingRule] = None,
) -> tuple[RootEstimate, list[TraceRow]]:
    """Iterate the recurrence until the stopping rule fires.

    Returns the estimate (the exact trailing-pair ratio at the final step)
    and the full trace table.  The default start vector is (1, 0, ..., 0).
    Degree-1 polynomials never reach this engine; their root is rational and
    read off directly by the callers.
    """
    if not isinstance(matrix, ReplacementMatrix):
        raise TypeError("run() needs a ReplacementMatrix (the polynomial provides residuals)")
    m = matrix.m
    if m < 2:
        raise ValueError("ratio iteration needs m >= 2")
    rule = stop if stop is not None else StoppingRule()
    start = tuple(s0) if s0 is not None else (1,) + (0,) * (m - 1)
    seed = seed_sequences(matrix, start)
    coeffs = scaled_char_coeffs(matrix)
    tracker = RunTracker(matrix.poly, m, rule)

    status: Optional[str] = None
    for j, vec in enumerate(seed.columns):
        status = tracker.emit(j, vec)
        if status is not None:
            break

    window = initial_window(seed)
    while status is None and window.step < rule.max_steps:
        window = recurrence_step(coeffs, window)
        if window.max_bit_length() > rule.rescale_bits:
            window = gcd_rescale(window)
        status = tracker.emit(window.step, window.newest)

    return tracker.finish(status if status is not None else BUDGET_EXHAUSTED)


def _ratio_strings(ratio: Optional[Fraction]) -> tuple[str, str]:
    if ratio is None:
        return "", ""
    return str(ratio), repr(float(ratio))


def rows_to_csv(rows: Sequence[TraceRow]) -> str:
    """Trace table as CSV; big integers as decimal strings, ratio as p/q."""
    if not rows:
        return ""
    m = len(rows[0].values)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["j"] + [f"S{i}" for i in range(1, m + 1)] + ["estimate", "estimate_float"])
    for row in rows:
        rational, floating = _ratio_strings(row.ratio)
        writer.writerow([row.step] + [str(v) for v in row.values] + [rational, floating])
    return out.getvalue()


def rows_to_json(rows: Sequence[TraceRow]) -> list[dict]:
    """Trace table as JSON-ready dicts; big integers as decimal strings."""
    result = []
    for row in rows:
        result.append(
            {
                "j": row.step,
                "values": [str(v) for v in row.values],
                "estimate": str(row.ratio) if row.ratio is not None else None,
                "estimate_float": float(row.ratio) if row.ratio is not None else None,
            }
        )
    return result
