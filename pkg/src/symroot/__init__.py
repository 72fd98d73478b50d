"""Exact real-root finding for integer polynomials.

Three mutually verifying methods: symbolic word rewriting with signed symbol
counting, exact count-vector matrix iteration, and big-integer m-term
recurrences, plus integer spectral shifts to reach non-dominant roots and the
cube-doubling construction rendered to SVG.
"""

from .convergence import (
    BUDGET_EXHAUSTED,
    CONVERGED,
    DEGENERATE_START,
    OSCILLATING,
    RootEstimate,
    StoppingRule,
    TraceRow,
)
from .delian import (
    ConstructionError,
    ConstructionTrace,
    construct,
    delian_counts,
    delian_trace,
    emit_svg,
)
from .oracle import DominanceReport, FloatRootSet, OracleError, all_roots_float, dominance_gap
from .polynomial import (
    IntPolynomial,
    PolynomialError,
    ReplacementMatrix,
    build_replacement_matrix,
    cayley_hamilton_residual,
    parse_polynomial,
    scaled_char_coeffs,
    shift_matrix,
)
from .recurrence import (
    SeedState,
    SequenceWindow,
    gcd_rescale,
    initial_window,
    recurrence_step,
    seed_sequences,
)
from .recurrence import run as run_recurrence
from .rewrite import (
    Alphabet,
    ReplacementRuleSet,
    WordCapExceeded,
    WordTrace,
    count_step,
    count_symbols,
    iterate_words,
    ratio_estimates,
    reduce_conjugates,
    rewrite_word,
    rules_from_matrix,
    run_count_iteration,
)
from .shifts import (
    DiscoveredRoot,
    RootSet,
    SearchConfig,
    ShiftCandidate,
    find_dominant_real_root,
    find_real_roots,
    shift_candidates,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BUDGET_EXHAUSTED",
    "CONVERGED",
    "ConstructionError",
    "ConstructionTrace",
    "DEGENERATE_START",
    "DiscoveredRoot",
    "DominanceReport",
    "FloatRootSet",
    "IntPolynomial",
    "OSCILLATING",
    "OracleError",
    "PolynomialError",
    "ReplacementMatrix",
    "ReplacementRuleSet",
    "RootEstimate",
    "RootSet",
    "SearchConfig",
    "SeedState",
    "SequenceWindow",
    "ShiftCandidate",
    "StoppingRule",
    "TraceRow",
    "WordCapExceeded",
    "WordTrace",
    "all_roots_float",
    "build_replacement_matrix",
    "cayley_hamilton_residual",
    "construct",
    "count_step",
    "count_symbols",
    "delian_counts",
    "delian_trace",
    "dominance_gap",
    "emit_svg",
    "find_dominant_real_root",
    "find_real_roots",
    "gcd_rescale",
    "initial_window",
    "iterate_words",
    "parse_polynomial",
    "ratio_estimates",
    "recurrence_step",
    "reduce_conjugates",
    "rewrite_word",
    "rules_from_matrix",
    "run_count_iteration",
    "run_recurrence",
    "scaled_char_coeffs",
    "seed_sequences",
    "shift_candidates",
    "shift_matrix",
]
