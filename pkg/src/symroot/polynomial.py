"""Exact polynomial input handling and the integer matrices that drive iteration.

Everything in this module is arbitrary precision: coefficients are Python
ints, matrices are tuples of int tuples, and no operation ever rounds.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rows = tuple[tuple[int, ...], ...]


class PolynomialError(ValueError):
    """Unusable polynomial input: empty, constant, or malformed."""


@dataclass(frozen=True)
class IntPolynomial:
    """Primitive integer polynomial a0*x^m + a1*x^(m-1) + ... + am.

    Coefficients are stored highest power first, the leading coefficient is
    nonzero, the degree is at least 1, and the coefficients share no common
    factor.  Use :meth:`from_coefficients` or :func:`parse_polynomial` to
    normalize arbitrary (possibly rational) input into this form.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) < 2:
            raise PolynomialError("degree must be at least 1")
        if not all(isinstance(c, int) for c in self.coeffs):
            raise PolynomialError("coefficients must be integers")
        if self.coeffs[0] == 0:
            raise PolynomialError("leading coefficient must be nonzero")
        if math.gcd(*self.coeffs) != 1:
            raise PolynomialError("coefficients must not share a common factor")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def a0(self) -> int:
        return self.coeffs[0]

    @classmethod
    def from_coefficients(
        cls, values: Iterable[Union[int, Fraction]]
    ) -> "IntPolynomial":
        """Clear denominators by their lcm, then divide out the content.

        Both steps leave the root set unchanged.
        """
        fracs = [Fraction(v) for v in values]
        if not fracs:
            raise PolynomialError("empty coefficient list")
        if fracs[0] == 0:
            raise PolynomialError("leading coefficient must be nonzero")
        scale = math.lcm(*(f.denominator for f in fracs))
        ints = [int(f * scale) for f in fracs]
        content = math.gcd(*ints)
        return cls(tuple(c // content for c in ints))

    def evaluate(self, x):
        """Horner evaluation; exact for int/Fraction x, approximate for floats."""
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        m = self.degree
        parts: list[str] = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = m - k
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + "x" + (f"^{e}" if e > 1 else "")
            parts.append(sign + body)
        return "".join(parts)


_COEF_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")
_TERM_RE = re.compile(r"(?P<sign>[+-])?(?P<coef>\d+(?:/\d+)?)?(?P<var>x(?:\^(?P<exp>\d+))?)?")


def _parse_coefficient(token: str) -> Fraction:
    if not _COEF_RE.match(token):
        raise PolynomialError(f"malformed coefficient {token!r}")
    return Fraction(token)


def _parse_terms(compact: str) -> dict[int, Fraction]:
    powers: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(compact):
        mobj = _TERM_RE.match(compact, pos)
        if mobj is None or mobj.end() == pos:
            raise PolynomialError(f"malformed term at {compact[pos:]!r}")
        sign, coef, var, exp = mobj.group("sign", "coef", "var", "exp")
        if coef is None and var is None:
            raise PolynomialError(f"malformed term at {compact[pos:]!r}")
        if not first and sign is None:
            raise PolynomialError(f"missing sign before {compact[pos:]!r}")
        value = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            value = -value
        e = 0 if var is None else (1 if exp is None else int(exp))
        powers[e] = powers.get(e, Fraction(0)) + value
        pos = mobj.end()
        first = False
    return powers


def parse_polynomial(text: str) -> IntPolynomial:
    """Parse either a comma-separated coefficient list (highest power first)
    or a term sum like ``2x^2+2x-1``.

    Coefficients may be rational (``1/2``); they are cleared to integers and
    the result is content-normalized.  Whitespace is ignored.
    """
    compact = "".join(text.split())
    if not compact:
        raise PolynomialError("empty polynomial")
    if "," in compact:
        return IntPolynomial.from_coefficients(
            _parse_coefficient(tok) for tok in compact.split(",")
        )
    if "x" not in compact:
        # a bare number is a degree-0 polynomial; reject with a parse error
        _parse_coefficient(compact)
        raise PolynomialError("degree must be at least 1")
    powers = {e: c for e, c in _parse_terms(compact).items() if c != 0}
    if not powers:
        raise PolynomialError("zero polynomial")
    degree = max(powers)
    if degree == 0:
        raise PolynomialError("degree must be at least 1")
    return IntPolynomial.from_coefficients(
        powers.get(e, Fraction(0)) for e in range(degree, -1, -1)
    )


@dataclass(frozen=True)
class ReplacementMatrix:
    """The m-by-m integer matrix whose iteration finds the polynomial's roots.

    For a plain matrix the eigenvalues are a0 times the roots; shifting by
    (alpha, beta) moves each eigenvalue to alpha + beta*a0*root while keeping
    every eigenvector, which is what lets runs on a shifted matrix report
    roots of the original polynomial directly.
    """

    rows: Rows
    poly: IntPolynomial
    shift: tuple[int, int] | None = None

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def is_plain(self) -> bool:
        return self.shift is None

    def matvec(self, v: Sequence[int]) -> tuple[int, ...]:
        return mat_vec(self.rows, v)

    def eigenvalue_of_root(self, r):
        lam = self.poly.a0 * r
        if self.shift is not None:
            alpha, beta = self.shift
            lam = alpha + beta * lam
        return lam


def build_replacement_matrix(p: IntPolynomial) -> ReplacementMatrix:
    """First row is (-a1 ... -am), the subdiagonal is a0, everything else 0.

    Degree 1 degenerates to the 1x1 matrix (-a1).
    """
    m = p.degree
    a = p.coeffs
    rows = [[0] * m for _ in range(m)]
    rows[0] = [-a[k] for k in range(1, m + 1)]
    for i in range(1, m):
        rows[i][i - 1] = a[0]
    return ReplacementMatrix(tuple(tuple(r) for r in rows), p)


def shift_matrix(matrix: ReplacementMatrix, alpha: int, beta: int) -> ReplacementMatrix:
    """Return alpha*I + beta*matrix, tagged with its shift.

    Only plain matrices may be shifted, so provenance stays single-level.
    """
    if beta == 0:
        raise ValueError("beta must be nonzero")
    if not matrix.is_plain:
        raise ValueError("matrix is already shifted; shifts do not stack")
    m = matrix.m
    rows = tuple(
        tuple(beta * matrix.rows[i][j] + (alpha if i == j else 0) for j in range(m))
        for i in range(m)
    )
    return ReplacementMatrix(rows, matrix.poly, (alpha, beta))


MatrixLike = Union[ReplacementMatrix, Sequence[Sequence[int]]]


def coerce_rows(matrix: MatrixLike) -> Rows:
    """Accept a ReplacementMatrix or any square int row-major sequence."""
    if isinstance(matrix, ReplacementMatrix):
        return matrix.rows
    rows = tuple(tuple(int(x) for x in row) for row in matrix)
    if any(len(row) != len(rows) for row in rows):
        raise ValueError("matrix must be square")
    return rows


def identity_rows(m: int) -> Rows:
    return tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m))


def mat_vec(rows: Rows, v: Sequence[int]) -> tuple[int, ...]:
    if len(v) != len(rows):
        raise ValueError("dimension mismatch")
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in rows)


def mat_mul(a: Rows, b: Rows) -> Rows:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _trace(rows: Rows) -> int:
    return sum(rows[i][i] for i in range(len(rows)))


def _add_scaled_identity(rows: Rows, c: int) -> Rows:
    return tuple(
        tuple(rows[i][j] + (c if i == j else 0) for j in range(len(rows)))
        for i in range(len(rows))
    )


def scaled_char_coeffs(matrix: MatrixLike) -> tuple[int, ...]:
    """Monic characteristic coefficients of det(lambda*I - M), exactly.

    Computed by the Faddeev-LeVerrier recurrence, whose divisions are exact
    over the integers.  For a plain replacement matrix the result equals
    (1, a1, a0*a2, ..., a0^(m-1)*am), which is also the coefficient set of
    the m-term recurrence the sequences satisfy.
    """
    rows = coerce_rows(matrix)
    m = len(rows)
    coeffs = [1]
    work = rows
    for k in range(1, m + 1):
        c, rem = divmod(-_trace(work), k)
        if rem:  # cannot happen for integer matrices
            raise ArithmeticError("inexact division in characteristic polynomial")
        coeffs.append(c)
        if k < m:
            work = mat_mul(rows, _add_scaled_identity(work, c))
    return tuple(coeffs)


def cayley_hamilton_residual(matrix: MatrixLike) -> Rows:
    """Evaluate the matrix's own characteristic polynomial at the matrix.

    The result is the zero matrix; returning it (rather than asserting)
    lets callers verify exactness themselves.
    """
    rows = coerce_rows(matrix)
    acc = identity_rows(len(rows))
    for c in scaled_char_coeffs(rows)[1:]:
        acc = _add_scaled_identity(mat_mul(acc, rows), c)
    return acc
