"""Letter-replacement engine: rules from a matrix, word iteration, counting.

A matrix entry e in row i, column j sends letter j to e copies of letter i;
negative entries produce the conjugate letter instead, which is why the
alphabet has 2m symbols (letter m+i is the conjugate of letter i).  Counting
each letter minus its conjugate turns one rewrite of a word into one exact
matrix-vector product on its count vector, so long runs can leave the words
behind and iterate counts alone.

Words are plain tuples of letter indices in 1..2m; glyph rendering and
parsing live on :class:`Alphabet`.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .convergence import BUDGET_EXHAUSTED, RootEstimate, RunTracker, StoppingRule, TraceRow
from .polynomial import MatrixLike, ReplacementMatrix, coerce_rows, mat_vec

Word = tuple[int, ...]

DEFAULT_WORD_CAP = 1_000_000


class WordCapExceeded(RuntimeError):
    """A rewrite would outgrow the word cap; continue in count mode instead."""

    def __init__(self, needed: int, cap: int):
        super().__init__(
            f"rewritten word would have {needed} letters (cap {cap}); switch to count mode"
        )
        self.needed = needed
        self.cap = cap


@dataclass(frozen=True)
class Alphabet:
    """2m letters with display glyphs; letter m+i is the conjugate of i."""

    m: int
    glyphs: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("alphabet needs m >= 1")
        if len(self.glyphs) != 2 * self.m or len(set(self.glyphs)) != len(self.glyphs):
            raise ValueError("need 2m distinct glyphs")

    @staticmethod
    def default(m: int) -> "Alphabet":
        # cubic fixtures read best with the classic three construction colors
        base = ("B", "G", "R") if m == 3 else tuple(str(i) for i in range(m))
        return Alphabet(m, base + tuple(g + "~" for g in base))

    def conjugate(self, letter: int) -> int:
        self._check(letter)
        return letter + self.m if letter <= self.m else letter - self.m

    def glyph(self, letter: int) -> str:
        self._check(letter)
        return self.glyphs[letter - 1]

    def to_string(self, word: Sequence[int]) -> str:
        return "".join(self.glyph(letter) for letter in word)

    def parse(self, text: str) -> Word:
        """Inverse of :meth:`to_string`; longest glyph wins at each position."""
        table = {g: i + 1 for i, g in enumerate(self.glyphs)}
        lengths = sorted({len(g) for g in self.glyphs}, reverse=True)
        word: list[int] = []
        pos = 0
        while pos < len(text):
            for n in lengths:
                letter = table.get(text[pos : pos + n])
                if letter is not None:
                    word.append(letter)
                    pos += n
                    break
            else:
                raise ValueError(f"unknown symbol at {text[pos:]!r}")
        return tuple(word)

    def _check(self, letter: int) -> None:
        if not 1 <= letter <= 2 * self.m:
            raise ValueError(f"letter {letter} outside 1..{2 * self.m}")


@dataclass(frozen=True)
class ReplacementRuleSet:
    """One replacement word per letter; conjugate letters mirror their base."""

    alphabet: Alphabet
    images: tuple[Word, ...]

    @property
    def m(self) -> int:
        return self.alphabet.m

    def image(self, letter: int) -> Word:
        return self.images[letter - 1]


def rules_from_matrix(matrix: MatrixLike, alphabet: Optional[Alphabet] = None) -> ReplacementRuleSet:
    """Column j of the matrix becomes the rule for letter j.

    Within a rule, letters appear in ascending row order: entry e in row i
    contributes e copies of letter i when positive, |e| copies of its
    conjugate when negative.  Rules for conjugate letters are the letter-wise
    conjugates of the base rules.  An all-zero column yields an empty rule.
    """
    rows = coerce_rows(matrix)
    m = len(rows)
    alpha = alphabet if alphabet is not None else Alphabet.default(m)
    if alpha.m != m:
        raise ValueError("alphabet size does not match the matrix")
    images: list[Word] = []
    for j in range(m):
        img: list[int] = []
        for i in range(m):
            e = rows[i][j]
            if e > 0:
                img.extend([i + 1] * e)
            elif e < 0:
                img.extend([m + i + 1] * (-e))
        images.append(tuple(img))
    for j in range(m):
        images.append(tuple(alpha.conjugate(letter) for letter in images[j]))
    return ReplacementRuleSet(alpha, tuple(images))


def rewrite_word(rules: ReplacementRuleSet, word: Sequence[int], cap: int = DEFAULT_WORD_CAP) -> Word:
    """Concatenate the rule images of each letter, in order."""
    total = sum(len(rules.image(letter)) for letter in word)
    if total > cap:
        raise WordCapExceeded(total, cap)
    out: list[int] = []
    for letter in word:
        out.extend(rules.image(letter))
    return tuple(out)


@dataclass(frozen=True)
class WordTrace:
    """Words from repeated rewriting; truncated marks an early cap stop."""

    words: tuple[Word, ...]
    truncated: bool


def iterate_words(
    rules: ReplacementRuleSet,
    start: Sequence[int],
    steps: int,
    cap: int = DEFAULT_WORD_CAP,
) -> WordTrace:
    """(w, R(w), ..., R^steps(w)); stops early with a marker if a word would
    pass the cap."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    words = [tuple(start)]
    for _ in range(steps):
        try:
            words.append(rewrite_word(rules, words[-1], cap))
        except WordCapExceeded:
            return WordTrace(tuple(words), True)
    return WordTrace(tuple(words), False)


def count_symbols(word: Sequence[int], m: int) -> tuple[int, ...]:
    """Signed counts: occurrences of each letter minus its conjugate's."""
    counts = [0] * m
    for letter in word:
        if letter <= m:
            counts[letter - 1] += 1
        else:
            counts[letter - m - 1] -= 1
    return tuple(counts)


def reduce_conjugates(word: Sequence[int], m: int) -> Word:
    """Remove as many letter/conjugate pairs as exist, keeping survivor order.

    For each i, min(count(i), count(conj(i))) occurrences of both letters are
    dropped (the earliest ones); the signed counts are unchanged.
    """
    occurrences = Counter(word)
    to_drop: dict[int, int] = {}
    for i in range(1, m + 1):
        k = min(occurrences[i], occurrences[i + m])
        to_drop[i] = k
        to_drop[i + m] = k
    out: list[int] = []
    for letter in word:
        if to_drop.get(letter, 0) > 0:
            to_drop[letter] -= 1
        else:
            out.append(letter)
    return tuple(out)


def count_step(matrix: MatrixLike, counts: Sequence[int]) -> tuple[int, ...]:
    """One rewrite in count space: the exact matrix-vector product."""
    return mat_vec(coerce_rows(matrix), tuple(int(c) for c in counts))


def ratio_estimates(counts: Sequence[int]) -> tuple[Optional[Fraction], ...]:
    """Adjacent-component ratios n_j/n_{j+1}, None where the denominator is 0.

    All components tend to the same limit; the last entry is the designated
    root estimate, since the corresponding eigenvector components are the
    root and 1.
    """
    if len(counts) < 2:
        raise ValueError("need at least two components")
    return tuple(
        Fraction(counts[j], counts[j + 1]) if counts[j + 1] != 0 else None
        for j in range(len(counts) - 1)
    )


def run_count_iteration(
    matrix: ReplacementMatrix,
    n0: Optional[Sequence[int]] = None,
    stop: Optional[StoppingRule] = None,
) -> tuple[RootEstimate, list[TraceRow]]:
    """Iterate count vectors (one matrix-vector product per step) until the
    stopping rule fires.

    Produces the same table, row for row, as the recurrence engine started
    from the same vector; the default start is the count vector of the
    single-letter word A1.
    """
    if not isinstance(matrix, ReplacementMatrix):
        raise TypeError("run_count_iteration() needs a ReplacementMatrix")
    m = matrix.m
    if m < 2:
        raise ValueError("ratio iteration needs m >= 2")
    rule = stop if stop is not None else StoppingRule()
    vector = tuple(int(c) for c in n0) if n0 is not None else (1,) + (0,) * (m - 1)
    if len(vector) != m:
        raise ValueError(f"count vector needs {m} components")
    if not any(vector):
        raise ValueError("count vector must be nonzero")
    tracker = RunTracker(matrix.poly, m, rule)

    step = 0
    status = tracker.emit(step, vector)
    while status is None and step < rule.max_steps:
        vector = matrix.matvec(vector)
        if max(abs(v).bit_length() for v in vector) > rule.rescale_bits:
            g = math.gcd(*vector)
            if g > 1:
                vector = tuple(v // g for v in vector)
        step += 1
        status = tracker.emit(step, vector)

    return tracker.finish(status if status is not None else BUDGET_EXHAUSTED)


def trace_lines(
    alphabet: Alphabet, words: Iterable[Sequence[int]], with_counts: bool = False
) -> Iterator[str]:
    """Render words one per line, optionally with tab-separated signed counts."""
    for word in words:
        line = alphabet.to_string(word)
        if with_counts:
            counts = count_symbols(word, alphabet.m)
            line = "\t".join([line] + [str(c) for c in counts])
        yield line
