"""Doubling the cube by substitution: three-color words whose green/red count
ratio tends to the cube root of 2, plus the exact similar-triangle construction
that turns those counts into a segment of that length, rendered to SVG.

The words follow B -> BG, G -> GR, R -> BBR (the rules of the shifted cubic
matrix for x^3 - 2, letters in ascending row order).  All construction
coordinates are exact rationals: the inclined segment uses a rational point on
the unit circle, so the parallelism of AE and BD is exact, and the final
segment DE equals unit * green/red exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

from .polynomial import parse_polynomial, build_replacement_matrix, shift_matrix
from .rewrite import Alphabet, count_step, rules_from_matrix

DELIAN_POLY = parse_polynomial("x^3-2")
DELIAN_MATRIX = shift_matrix(build_replacement_matrix(DELIAN_POLY), 1, 1)
DELIAN_ALPHABET = Alphabet.default(3)
DELIAN_RULES = rules_from_matrix(DELIAN_MATRIX, DELIAN_ALPHABET)

SVG_SEGMENT_CAP = 2000

_B, _G, _R = 1, 2, 3
_COLORS = {_B: "blue", _G: "green", _R: "red"}


class ConstructionError(ValueError):
    """The requested construction is geometrically impossible."""


Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class ConstructionPoints:
    """A and B and C on the base line, D on the unit incline, E beyond it."""

    a: Point
    b: Point
    c: Point
    d: Point
    e: Point


@dataclass(frozen=True)
class ConstructionTrace:
    """Everything needed to draw and verify one construction.

    lines holds the iterated words (prefixes past the render cap, with
    line_lengths carrying the exact letter counts).  points and de_ratio are
    None when too few iterations produced no red letters yet.
    """

    iterations: int
    lines: tuple[tuple[int, ...], ...]
    line_lengths: tuple[int, ...]
    counts: tuple[int, int, int]
    theta_deg: float
    direction: tuple[Fraction, Fraction]
    unit: Fraction
    points: Optional[ConstructionPoints]
    de_ratio: Optional[Fraction]


def delian_counts(iterations: int) -> tuple[int, int, int]:
    """(blue, green, red) letter counts after the given number of rewrites,
    starting from the single blue letter; exact at any depth."""
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    counts = (1, 0, 0)
    for _ in range(iterations):
        counts = count_step(DELIAN_MATRIX, counts)
    return counts


def delian_prefix_words(
    iterations: int, cap: int = SVG_SEGMENT_CAP
) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """The iterated words, truncated to cap letters, with exact lengths.

    Rewriting a prefix yields a prefix of the rewrite (the rules are a
    concatenation homomorphism with non-empty images), so deep lines stay
    cheap while their true lengths come from the counts.
    """
    words = [(_B,)]
    lengths = [1]
    counts = (1, 0, 0)
    for _ in range(iterations):
        prefix: list[int] = []
        for letter in words[-1]:
            prefix.extend(DELIAN_RULES.image(letter))
            if len(prefix) > cap:
                break
        words.append(tuple(prefix[: cap + 1]))
        counts = count_step(DELIAN_MATRIX, counts)
        lengths.append(sum(counts))
    return tuple(words), tuple(lengths)


def rational_direction(theta_deg: float, max_denominator: int = 64) -> tuple[Fraction, Fraction]:
    """A rational point on the unit circle near the requested angle.

    Built from a rational half-angle tangent t via ((1-t^2)/(1+t^2),
    2t/(1+t^2)), so cx^2 + cy^2 = 1 holds exactly.  The default angle of
    53.13 degrees lands on (3/5, 4/5).
    """
    if not 0.0 < theta_deg < 180.0:
        raise ConstructionError("theta must be strictly between 0 and 180 degrees")
    t = Fraction(math.tan(math.radians(theta_deg) / 2.0)).limit_denominator(max_denominator)
    if t <= 0:
        t = Fraction(1, max_denominator)
    cx = (1 - t * t) / (1 + t * t)
    cy = 2 * t / (1 + t * t)
    return cx, cy


def construct(
    counts: Sequence[int],
    theta_deg: float = 53.13,
    unit: Union[int, Fraction] = 1,
) -> ConstructionTrace:
    """Exact similar-triangle extraction of the green/red ratio.

    With g green and r red letters: A=(0,0), B=(g*u,0), C=((g+r)*u,0), D one
    unit from C along the incline, and E on ray CD where the parallel to BD
    through A meets it, so |CE|/|CD| = |CA|/|CB| and DE = u*g/r exactly.
    """
    blue, green, red = (int(c) for c in counts)
    if red <= 0:
        raise ConstructionError("no red letters yet; run more iterations")
    u = Fraction(unit)
    if u <= 0:
        raise ConstructionError("unit length must be positive")
    cx, cy = rational_direction(theta_deg)
    a = (Fraction(0), Fraction(0))
    b = (u * green, Fraction(0))
    c = (u * (green + red), Fraction(0))
    d = (c[0] + u * cx, u * cy)
    reach = u * Fraction(green + red, red)  # |CE|
    e = (c[0] + reach * cx, reach * cy)
    return ConstructionTrace(
        iterations=0,
        lines=(),
        line_lengths=(),
        counts=(blue, green, red),
        theta_deg=theta_deg,
        direction=(cx, cy),
        unit=u,
        points=ConstructionPoints(a, b, c, d, e),
        de_ratio=Fraction(green, red),
    )


def delian_trace(
    iterations: int,
    theta_deg: float = 53.13,
    unit: Union[int, Fraction] = 1,
    cap: int = SVG_SEGMENT_CAP,
) -> ConstructionTrace:
    """Full trace: iterated words plus the construction when red exists."""
    words, lengths = delian_prefix_words(iterations, cap)
    counts = delian_counts(iterations)
    if counts[2] > 0:
        trace = construct(counts, theta_deg, unit)
    else:
        trace = ConstructionTrace(
            iterations=0,
            lines=(),
            line_lengths=(),
            counts=counts,
            theta_deg=theta_deg,
            direction=rational_direction(theta_deg),
            unit=Fraction(unit),
            points=None,
            de_ratio=None,
        )
    return replace(trace, iterations=iterations, lines=words, line_lengths=lengths)


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def _svg_line(x1: float, y1: float, x2: float, y2: float, stroke: str, width: float) -> str:
    return (
        f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
        f'stroke="{stroke}" stroke-width="{_fmt(width)}" />'
    )


def _svg_text(x: float, y: float, content: str, size: int = 11) -> str:
    return f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{size}">{content}</text>'


def emit_svg(trace: ConstructionTrace, path: str, cap: int = SVG_SEGMENT_CAP) -> None:
    """Write the trace as SVG 1.1.

    One group per iteration line (id band-1, band-2, ...) with one unit
    segment per letter, capped with an ellipsis marker; then, when the
    construction exists, a scaled-to-fit figure of the green and red runs,
    the incline CD, BD, AE, and the highlighted answer segment DE annotated
    with its exact and decimal lengths.
    """
    pad = 20.0
    row_h = 16.0
    unit_px = max(2.0, float(trace.unit))
    parts: list[str] = []
    width = 2.0 * pad
    y = pad

    for index, word in enumerate(trace.lines):
        shown = word[:cap]
        segs: list[str] = []
        for k, letter in enumerate(shown):
            x1 = pad + k * unit_px
            segs.append(_svg_line(x1, y, x1 + unit_px, y, _COLORS.get(letter, "black"), 6.0))
        if trace.line_lengths[index] > len(shown):
            segs.append(
                _svg_text(
                    pad + len(shown) * unit_px + 4, y + 4,
                    f"... ({trace.line_lengths[index]} letters)",
                )
            )
        parts.append(f'<g id="band-{index + 1}">' + "".join(segs) + "</g>")
        width = max(width, pad * 2 + min(trace.line_lengths[index], cap + 1) * unit_px + 120)
        y += row_h

    if trace.points is not None:
        y += 2 * row_h
        pts = trace.points
        xs = [float(q[0]) for q in (pts.a, pts.b, pts.c, pts.d, pts.e)]
        ys = [float(q[1]) for q in (pts.a, pts.b, pts.c, pts.d, pts.e)]
        span_x = max(xs) - min(xs) or 1.0
        span_y = max(ys) - min(ys) or 1.0
        fig_w, fig_h = 720.0, 240.0
        scale = min(fig_w / span_x, fig_h / span_y)
        base_y = y + fig_h + row_h

        def at(q: Point) -> tuple[float, float]:
            return (pad + (float(q[0]) - min(xs)) * scale, base_y - float(q[1]) * scale)

        ax, ay = at(pts.a)
        bx, by = at(pts.b)
        cx_, cy_ = at(pts.c)
        dx, dy = at(pts.d)
        ex, ey = at(pts.e)
        g = [
            _svg_line(ax, ay, bx, by, "green", 4.0),
            _svg_line(bx, by, cx_, cy_, "red", 4.0),
            _svg_line(cx_, cy_, dx, dy, "black", 1.5),
            _svg_line(bx, by, dx, dy, "black", 1.5),
            _svg_line(ax, ay, ex, ey, "black", 1.5),
            _svg_line(dx, dy, ex, ey, "black", 5.0),
        ]
        for name, (px, py) in zip("ABCDE", [(ax, ay), (bx, by), (cx_, cy_), (dx, dy), (ex, ey)]):
            g.append(_svg_text(px + 3, py - 4, name))
        ratio = trace.de_ratio
        g.append(
            _svg_text(
                pad, base_y + row_h * 1.5,
                f"DE = {ratio.numerator}/{ratio.denominator} unit = {float(ratio):.12f} unit",
                12,
            )
        )
        parts.append('<g id="construction">' + "".join(g) + "</g>")
        width = max(width, pad * 2 + fig_w + 60)
        y = base_y + 3 * row_h

    height = y + pad
    svg = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">\n'
        + "\n".join(parts)
        + "\n</svg>\n"
    )
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(svg)
