"""Grid evaluation and suprema of polynomials over compact rectangles.

Suprema are taken over a regular grid that always contains the four
corners, so they are lower bounds for the true supremum; consumers that
need a safe upper bound (the analyticity certificates) compensate with a
multiplicative safety factor.  The value returned by
:func:`sup_norm_on_grid` is re-evaluated through the scalar
:meth:`WirtingerPolynomial.evaluate` path at the maximizing grid point, so
independent audit code walking the same grid reproduces it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .symbolic import WirtingerPolynomial

__all__ = ["CompactRectangle", "evaluate_on_grid", "sup_norm_on_grid"]


@dataclass(frozen=True)
class CompactRectangle:
    """Axis-aligned rectangle [re_min, re_max] x [im_min, im_max] with a grid.

    Bounds are exact rationals; ``grid_n`` is the number of sample points
    per axis (>= 2, endpoints always included).
    """

    re_min: Fraction
    re_max: Fraction
    im_min: Fraction
    im_max: Fraction
    grid_n: int = 33

    def __post_init__(self):
        for name in ("re_min", "re_max", "im_min", "im_max"):
            value = getattr(self, name)
            if not isinstance(value, Fraction):
                object.__setattr__(self, name, Fraction(str(value)))
        if self.re_min > self.re_max or self.im_min > self.im_max:
            raise ValueError("rectangle is empty: min bound exceeds max bound")
        if not isinstance(self.grid_n, int) or self.grid_n < 2:
            raise ValueError("grid_n must be an integer >= 2")

    def grid_points(self) -> np.ndarray:
        """Flat complex array of the grid, corners included."""
        xs = np.linspace(float(self.re_min), float(self.re_max), self.grid_n)
        ys = np.linspace(float(self.im_min), float(self.im_max), self.grid_n)
        re, im = np.meshgrid(xs, ys, indexing="ij")
        return (re + 1j * im).ravel()

    def corners(self) -> tuple[complex, ...]:
        return tuple(
            complex(float(x), float(y))
            for x in (self.re_min, self.re_max)
            for y in (self.im_min, self.im_max)
        )

    def with_grid_n(self, grid_n: int) -> "CompactRectangle":
        return CompactRectangle(self.re_min, self.re_max, self.im_min, self.im_max, grid_n)

    def to_json(self) -> dict:
        return {
            "re_min": str(self.re_min),
            "re_max": str(self.re_max),
            "im_min": str(self.im_min),
            "im_max": str(self.im_max),
            "grid_n": self.grid_n,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CompactRectangle":
        return cls(
            Fraction(str(data["re_min"])),
            Fraction(str(data["re_max"])),
            Fraction(str(data["im_min"])),
            Fraction(str(data["im_max"])),
            int(data.get("grid_n", 33)),
        )


def evaluate_on_grid(poly: WirtingerPolynomial, points: np.ndarray) -> np.ndarray:
    """Vectorized evaluation of ``poly`` at an array of complex points."""
    values = np.zeros(points.shape, dtype=np.complex128)
    if poly.is_zero:
        return values
    conj = np.conj(points)
    max_p = max(p for p, _ in poly.terms)
    max_q = max(q for _, q in poly.terms)
    pow_s = [np.ones_like(points)]
    for _ in range(max_p):
        pow_s.append(pow_s[-1] * points)
    pow_sbar = [np.ones_like(points)]
    for _ in range(max_q):
        pow_sbar.append(pow_sbar[-1] * conj)
    for (p, q), coeff in poly.terms.items():
        values += coeff.to_complex() * pow_s[p] * pow_sbar[q]
    return values


def sup_with_argmax(poly: WirtingerPolynomial, points: np.ndarray) -> tuple[float, complex]:
    """Max of |poly| over the points and a point attaining it.

    The returned value is recomputed through the scalar evaluate path at the
    argmax, so point-by-point audits agree with it bit-for-bit.
    """
    if poly.is_zero:
        return 0.0, complex(points[0])
    magnitudes = np.abs(evaluate_on_grid(poly, points))
    best = complex(points[int(np.argmax(magnitudes))])
    return abs(poly.evaluate(best)), best


def sup_norm_on_grid(poly: WirtingerPolynomial, rectangle: CompactRectangle) -> float:
    """Maximum of |poly| over the rectangle's grid points."""
    sup, _ = sup_with_argmax(poly, rectangle.grid_points())
    return sup
