"""Recover non-dominant real roots by enumerating integer spectral shifts.

Shifting the iteration matrix to alpha*I + beta*M moves every eigenvalue
affinely while keeping its eigenvector, so whichever root the shifted run
converges to is a root of the original polynomial, read off directly.  Small
integer shifts are tried exhaustively; every converged estimate is residual
checked, deduplicated, and (when the float oracle is available) certified
against the dominance picture.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, Optional

from .convergence import CONVERGED, RootEstimate, StoppingRule
from .oracle import FloatRootSet, OracleError, all_roots_float
from .polynomial import IntPolynomial, build_replacement_matrix, shift_matrix
from . import recurrence
from . import rewrite

UNIQUE_DOMINANT = "unique-dominant"
LUCKY_CONVERGENCE = "lucky-convergence"
UNVERIFIED = "unverified"


@dataclass(frozen=True)
class SearchConfig:
    budget: int = 2000
    tol: float = 1e-12
    dedup_tol: float = 1e-8
    residual_tol: float = 1e-6  # scaled by max |coefficient|
    certify: bool = True
    min_dominance_gap: float = 0.01


@dataclass(frozen=True)
class ShiftCandidate:
    """One tried shift and the run it produced."""

    alpha: int
    beta: int
    estimate: RootEstimate
    certificate: Optional[str] = None


@dataclass(frozen=True)
class DiscoveredRoot:
    """A deduplicated root with its best exact witness."""

    value: float
    witness: Fraction
    shift: tuple[int, int]
    discoveries: int
    iterations: int
    residual: float
    certificate: str


@dataclass(frozen=True)
class RootSet:
    roots: tuple[DiscoveredRoot, ...]
    candidates: tuple[ShiftCandidate, ...]


def shift_candidates(alpha_max: int, beta_max: int = 1) -> Iterator[tuple[int, int]]:
    """Small shifts first: increasing |alpha|, then alpha, then beta."""
    if alpha_max < 0 or beta_max < 1:
        raise ValueError("need alpha_max >= 0 and beta_max >= 1")
    for alpha in sorted(range(-alpha_max, alpha_max + 1), key=lambda a: (abs(a), a)):
        for beta in range(1, beta_max + 1):
            yield alpha, beta


def _degree_one_estimate(p: IntPolynomial) -> RootEstimate:
    value = Fraction(-p.coeffs[1], p.coeffs[0])
    return RootEstimate(value, float(value), 0, CONVERGED, abs(p.evaluate(float(value))))


def find_dominant_real_root(
    p: IntPolynomial,
    engine: str = "recurrence",
    stop: Optional[StoppingRule] = None,
) -> RootEstimate:
    """Run the chosen engine on the plain matrix.

    Degree 1 returns -a1/a0 immediately.  A tied dominant pair (for example a
    complex conjugate pair on top) comes back as status "oscillating"; a
    shifted search is the remedy.
    """
    if p.degree == 1:
        return _degree_one_estimate(p)
    matrix = build_replacement_matrix(p)
    if engine == "recurrence":
        estimate, _ = recurrence.run(matrix, stop=stop)
    elif engine in ("rewrite-count", "rewrite"):
        estimate, _ = rewrite.run_count_iteration(matrix, stop=stop)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return estimate


def _certificate(
    oracle_roots: Optional[FloatRootSet],
    matrix_shift: tuple[int, int],
    a0: int,
    root: float,
    min_gap: float,
) -> str:
    if oracle_roots is None:
        return UNVERIFIED
    alpha, beta = matrix_shift
    moduli = []
    own = None
    best_dist = None
    for z, _ in oracle_roots.distinct():
        lam = abs(alpha + beta * a0 * z)
        dist = abs(z - root)
        if best_dist is None or dist < best_dist:
            if own is not None:
                moduli.append(own)
            best_dist, own = dist, lam
        else:
            moduli.append(lam)
    if own is None:
        return UNVERIFIED
    if not moduli or own >= (1.0 + min_gap) * max(moduli):
        return UNIQUE_DOMINANT
    return LUCKY_CONVERGENCE


@dataclass
class _Accumulator:
    value: float
    witness: Fraction
    shift: tuple[int, int]
    iterations: int
    residual: float
    certificate: str
    discoveries: int = 1

    def absorb(self, estimate: RootEstimate, shift: tuple[int, int], certificate: str) -> None:
        self.discoveries += 1
        if estimate.iterations > self.iterations:
            self.value = estimate.float_value
            self.witness = estimate.value
            self.shift = shift
            self.iterations = estimate.iterations
            self.residual = estimate.residual
            self.certificate = certificate


def find_real_roots(
    p: IntPolynomial,
    alpha_max: int = 3,
    beta_max: int = 1,
    config: Optional[SearchConfig] = None,
) -> RootSet:
    """Try every shift in [-alpha_max..alpha_max] x [1..beta_max].

    Converged estimates are kept only if the float residual passes
    |p(r)| <= residual_tol * max|a_i|; duplicates within dedup_tol merge,
    keeping the witness of the longest run.  An empty root set is a valid
    outcome (for example when all roots are complex).
    """
    cfg = config if config is not None else SearchConfig()
    if p.degree == 1:
        estimate = _degree_one_estimate(p)
        root = DiscoveredRoot(
            estimate.float_value,
            estimate.value,
            (0, 1),
            1,
            0,
            estimate.residual,
            UNIQUE_DOMINANT,
        )
        return RootSet((root,), (ShiftCandidate(0, 1, estimate, UNIQUE_DOMINANT),))

    plain = build_replacement_matrix(p)
    scale = max(abs(c) for c in p.coeffs)
    oracle_roots: Optional[FloatRootSet] = None
    if cfg.certify:
        try:
            oracle_roots = all_roots_float(p)
        except OracleError:
            oracle_roots = None

    rule = StoppingRule(tol=cfg.tol, max_steps=cfg.budget)
    candidates: list[ShiftCandidate] = []
    pool: list[_Accumulator] = []
    for alpha, beta in shift_candidates(alpha_max, beta_max):
        matrix = shift_matrix(plain, alpha, beta)
        estimate, _ = recurrence.run(matrix, stop=rule)
        certificate: Optional[str] = None
        if estimate.status == CONVERGED:
            certificate = _certificate(
                oracle_roots, (alpha, beta), p.a0, estimate.float_value, cfg.min_dominance_gap
            )
            if estimate.residual <= cfg.residual_tol * scale:
                for acc in pool:
                    if abs(acc.value - estimate.float_value) <= cfg.dedup_tol:
                        acc.absorb(estimate, (alpha, beta), certificate)
                        break
                else:
                    pool.append(
                        _Accumulator(
                            estimate.float_value,
                            estimate.value,
                            (alpha, beta),
                            estimate.iterations,
                            estimate.residual,
                            certificate,
                        )
                    )
        candidates.append(ShiftCandidate(alpha, beta, estimate, certificate))

    roots = tuple(
        sorted(
            (
                DiscoveredRoot(
                    acc.value,
                    acc.witness,
                    acc.shift,
                    acc.discoveries,
                    acc.iterations,
                    acc.residual,
                    acc.certificate,
                )
                for acc in pool
            ),
            key=lambda r: r.value,
        )
    )
    return RootSet(roots, tuple(candidates))
