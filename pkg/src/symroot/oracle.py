"""Self-contained floating-point root finder for verification only.

Simultaneous one-point iteration refines all roots at once; nothing here
feeds the exact engines, so removing this module leaves every root-finding
path intact.  The start configuration is fixed (Cauchy-bound circle, rotated
off the axes), making every run deterministic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .polynomial import IntPolynomial, ReplacementMatrix

# rotation of the start circle; any fixed angle not aligned with conjugate
# symmetry works, this one keeps real-root fixtures off the real axis
_START_ANGLE = 0.7390851332151607

_RESIDUAL_TOL = 1e-9
_STAGNATION_TOL = 1e-13
_CLUSTER_TOL = 1e-5
_IMAG_TOL = 1e-6


class OracleError(RuntimeError):
    """The float iteration failed to reach the residual target."""


@dataclass(frozen=True)
class FloatRootSet:
    """All m roots (repeated to multiplicity, cluster-averaged) plus flags."""

    roots: tuple[complex, ...]
    multiplicities: tuple[int, ...]
    max_residual: float

    def distinct(self) -> tuple[tuple[complex, int], ...]:
        """(root, multiplicity) pairs, one per cluster."""
        out: list[tuple[complex, int]] = []
        i = 0
        while i < len(self.roots):
            out.append((self.roots[i], self.multiplicities[i]))
            i += self.multiplicities[i]
        return tuple(out)

    def real_roots(self) -> tuple[float, ...]:
        """Distinct real roots, ascending."""
        reals = [
            z.real
            for z, _ in self.distinct()
            if abs(z.imag) <= _IMAG_TOL * max(1.0, abs(z.real))
        ]
        return tuple(sorted(reals))


def _horner(coeffs: list[float], z: complex) -> complex:
    acc: complex = 0.0
    for c in coeffs:
        acc = acc * z + c
    return acc


def _residual_scale(coeffs: list[float], z: complex, m: int) -> float:
    return sum(abs(c) for c in coeffs) * max(1.0, abs(z)) ** m


def all_roots_float(p: IntPolynomial, max_sweeps: int = 1000) -> FloatRootSet:
    """All m complex roots, deterministic, clustered for multiplicity.

    Sweeps continue until the iterates stagnate (or the sweep cap), after
    which every root must meet the residual bound
    |p(z)| <= 1e-9 * sum|a_i| * max(1,|z|)^m or OracleError is raised.
    """
    coeffs = [float(c) for c in p.coeffs]
    m = p.degree
    radius = 1.0 + max(abs(c) / abs(coeffs[0]) for c in coeffs[1:])
    z = [radius * cmath.exp(1j * (2.0 * math.pi * k / m + _START_ANGLE)) for k in range(m)]

    for _ in range(max_sweeps):
        moved = 0.0
        for k in range(m):
            denom = coeffs[0]
            for j in range(m):
                if j != k:
                    denom *= z[k] - z[j]
            if denom == 0:
                z[k] += 1e-6 * (1 + 1j) * max(1.0, abs(z[k]))
                moved = 1.0
                continue
            step = _horner(coeffs, z[k]) / denom
            z[k] -= step
            moved = max(moved, abs(step) / max(1.0, abs(z[k])))
        if moved <= _STAGNATION_TOL:
            break

    clusters = _cluster(z)
    roots: list[complex] = []
    multiplicities: list[int] = []
    max_residual = 0.0
    for center, size in clusters:
        residual = abs(_horner(coeffs, center))
        scale = _residual_scale(coeffs, center, m)
        if residual > _RESIDUAL_TOL * scale:
            raise OracleError(
                f"root iteration did not converge for {p}: residual {residual:.3e} "
                f"exceeds {_RESIDUAL_TOL * scale:.3e}"
            )
        max_residual = max(max_residual, residual)
        roots.extend([center] * size)
        multiplicities.extend([size] * size)
    return FloatRootSet(tuple(roots), tuple(multiplicities), max_residual)


def _cluster(points: list[complex]) -> list[tuple[complex, int]]:
    """Group near-coincident iterates; a multiple root leaves a tight ring
    around itself whose mean is far more accurate than any member."""
    n = len(points)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            tol = _CLUSTER_TOL * max(1.0, abs(points[i]), abs(points[j]))
            if abs(points[i] - points[j]) <= tol:
                parent[find(j)] = find(i)

    groups: dict[int, list[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(points[i])
    centers = [(sum(g) / len(g), len(g)) for g in groups.values()]
    centers.sort(key=lambda item: (item[0].real, item[0].imag))
    return centers


@dataclass(frozen=True)
class DominanceReport:
    """Whether one eigenvalue modulus strictly dominates, and by how much."""

    kind: str  # "unique-dominant" | "tied"
    gap: Optional[float]  # top/second - 1 when unique, None when tied
    dominant_eigenvalue: complex
    dominant_root: complex


def dominance_gap(
    p: IntPolynomial, matrix: ReplacementMatrix, tie_tol: float = 1e-9
) -> DominanceReport:
    """Relative gap between the two largest eigenvalue moduli of the matrix.

    Eigenvalues are derived from the float roots (a0*r, shifted affinely when
    the matrix is shifted); distinct roots only, so a genuinely multiple root
    does not tie with itself.
    """
    roots = all_roots_float(p)
    pairs = [(matrix.eigenvalue_of_root(z), z) for z, _ in roots.distinct()]
    pairs.sort(key=lambda item: abs(item[0]), reverse=True)
    top_eig, top_root = pairs[0]
    if len(pairs) == 1:
        return DominanceReport("unique-dominant", math.inf, top_eig, top_root)
    top, second = abs(pairs[0][0]), abs(pairs[1][0])
    if top - second <= tie_tol * max(1.0, top):
        return DominanceReport("tied", None, top_eig, top_root)
    return DominanceReport("unique-dominant", top / second - 1.0, top_eig, top_root)
