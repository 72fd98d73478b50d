"""Stopping rules and run bookkeeping shared by the exact iteration engines.

Every engine produces one root estimate per step, the exact rational ratio of
the two trailing components of the current state vector (undefined when the
denominator is zero).  This module watches that stream and decides when a run
has converged, is provably cycling, started degenerately, or ran out of
budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

CONVERGED = "converged"
OSCILLATING = "oscillating"
BUDGET_EXHAUSTED = "budget-exhausted"
DEGENERATE_START = "degenerate-start"


@dataclass(frozen=True)
class StoppingRule:
    """Thresholds for ending a run.

    tol:           relative step-to-step change under which the estimate is
                   considered stable.
    stable_steps:  consecutive stable steps required to declare convergence.
    max_steps:     step budget; exceeding it ends the run unresolved.
    osc_steps:     window length for the cycle detector.
    max_osc_period: longest cycle period the detector looks for.
    rescale_bits:  entry bit-length that triggers a gcd rescale of the state.
    """

    tol: float = 1e-12
    stable_steps: int = 3
    max_steps: int = 10_000
    osc_steps: int = 20
    max_osc_period: int = 6
    rescale_bits: int = 4096


@dataclass(frozen=True)
class RootEstimate:
    """Outcome of a run: exact rational estimate plus convergence metadata."""

    value: Optional[Fraction]
    float_value: Optional[float]
    iterations: int
    status: str
    residual: Optional[float]


@dataclass(frozen=True)
class TraceRow:
    """One table row: step index, state vector as stored, trailing ratio."""

    step: int
    values: tuple[int, ...]
    ratio: Optional[Fraction]


def _as_float(ratio: Optional[Fraction]) -> Optional[float]:
    if ratio is None:
        return None
    try:
        return float(ratio)
    except OverflowError:
        return None


class ConvergenceMonitor:
    """Streaming classifier for the estimate sequence.

    Convergence: the float estimate changes by at most tol*max(1,|v|) for
    ``stable_steps`` consecutive steps.

    Oscillation: the estimates cycle with some short period (2..max_osc_period)
    through at least two separated clusters for ``osc_steps`` consecutive
    steps.  An undefined estimate counts as its own cluster, values match a
    cluster within 100*tol relatively, and the between-cluster gap must not be
    shrinking across the window (a shrinking gap is a converging transient,
    e.g. an alternating approach driven by a negative subdominant eigenvalue).
    """

    def __init__(self, rule: StoppingRule):
        self.rule = rule
        self._history: list[Optional[float]] = []
        self._stable = 0

    def feed(self, ratio: Optional[Fraction]) -> Optional[str]:
        value = _as_float(ratio)
        hist = self._history
        if (
            value is not None
            and hist
            and hist[-1] is not None
            and abs(value - hist[-1]) <= self.rule.tol * max(1.0, abs(value))
        ):
            self._stable += 1
        else:
            self._stable = 0
        hist.append(value)
        keep = self.rule.osc_steps + self.rule.max_osc_period + 1
        if len(hist) > keep:
            del hist[: len(hist) - keep]
        if self._stable >= self.rule.stable_steps:
            return CONVERGED
        if self._oscillating():
            return OSCILLATING
        return None

    def _matches(self, a: Optional[float], b: Optional[float]) -> bool:
        if a is None or b is None:
            return a is None and b is None
        return abs(a - b) <= 100.0 * self.rule.tol * max(1.0, abs(b))

    def _oscillating(self) -> bool:
        hist = self._history
        n = self.rule.osc_steps
        for period in range(2, self.rule.max_osc_period + 1):
            if len(hist) < n + period:
                break
            if not all(self._matches(hist[-1 - k], hist[-1 - k - period]) for k in range(n)):
                continue
            window = hist[-n:]
            if all(self._matches(window[i], window[i + 1]) for i in range(n - 1)):
                continue  # single cluster; convergence logic owns this case
            if None not in window and not self._gap_holding(window, period):
                continue
            return True
        return False

    @staticmethod
    def _max_gap(values: list[float]) -> float:
        return max(abs(values[i + 1] - values[i]) for i in range(len(values) - 1))

    def _gap_holding(self, window: list[float], period: int) -> bool:
        first = self._max_gap(window[: period + 1])
        last = self._max_gap(window[-(period + 1):])
        return last >= 0.5 * first


class RunTracker:
    """Per-run state the engines share: trace rows plus stop decisions."""

    def __init__(self, poly, m: int, rule: StoppingRule):
        self.poly = poly
        self.m = m
        self.rule = rule
        self.rows: list[TraceRow] = []
        self._monitor = ConvergenceMonitor(rule)
        self._zero_denominators = 0

    def emit(self, step: int, vector: tuple[int, ...]) -> Optional[str]:
        """Record one step; return a terminal status once one is reached."""
        denominator = vector[-1]
        ratio = Fraction(vector[-2], denominator) if denominator != 0 else None
        self.rows.append(TraceRow(step, tuple(vector), ratio))
        status = self._monitor.feed(ratio)
        if denominator == 0:
            self._zero_denominators += 1
            # the recurrence window is m terms deep: m consecutive zeros pin
            # the denominator sequence at zero forever
            if status is None and self._zero_denominators >= self.m:
                return DEGENERATE_START
        else:
            self._zero_denominators = 0
        return status

    def finish(self, status: str) -> tuple[RootEstimate, list[TraceRow]]:
        iterations = self.rows[-1].step if self.rows else 0
        value: Optional[Fraction] = None
        if status == CONVERGED:
            value = self.rows[-1].ratio
        elif status == BUDGET_EXHAUSTED:
            value = next((r.ratio for r in reversed(self.rows) if r.ratio is not None), None)
        float_value = _as_float(value)
        residual = abs(self.poly.evaluate(float_value)) if float_value is not None else None
        return RootEstimate(value, float_value, iterations, status, residual), self.rows
