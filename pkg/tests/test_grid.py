"""Grid suprema over compact rectangles."""

import math
from fractions import Fraction

import numpy as np
import pytest

from hilbertfield import CompactRectangle, evaluate_on_grid, sup_norm_on_grid, ONE, S, SBAR

SQUARE = CompactRectangle(Fraction(-1), Fraction(1), Fraction(-1), Fraction(1), 17)


def test_corners_always_included():
    for n in (2, 3, 17, 64):
        rect = SQUARE.with_grid_n(n)
        pts = set(np.round(rect.grid_points(), 12))
        for corner in rect.corners():
            assert complex(np.round(corner, 12)) in pts


def test_sup_of_identity_map():
    # |s| on the square is maximized at a corner; refining the grid never
    # changes the corner value
    coarse = sup_norm_on_grid(S, SQUARE.with_grid_n(8))
    fine = sup_norm_on_grid(S, SQUARE.with_grid_n(128))
    assert coarse == fine == pytest.approx(math.sqrt(2), abs=1e-12)


def test_sup_of_constant():
    assert sup_norm_on_grid(ONE, SQUARE) == 1.0
    assert sup_norm_on_grid(ONE, CompactRectangle(0, 5, -3, 9, 5)) == 1.0


def test_sup_of_modulus_squared():
    dense = sup_norm_on_grid(S * SBAR, SQUARE.with_grid_n(256))
    assert sup_norm_on_grid(S * SBAR, SQUARE) == dense == pytest.approx(2.0, abs=1e-12)


def test_zero_polynomial():
    from hilbertfield import ZERO

    assert sup_norm_on_grid(ZERO, SQUARE) == 0.0


def test_invalid_rectangle_rejected():
    with pytest.raises(ValueError):
        CompactRectangle(1, -1, 0, 1)
    with pytest.raises(ValueError):
        CompactRectangle(0, 1, 2, 1)
    with pytest.raises(ValueError):
        CompactRectangle(0, 1, 0, 1, grid_n=1)


def test_degenerate_rectangle_is_allowed():
    segment = CompactRectangle(0, 1, 0, 0, 9)
    assert sup_norm_on_grid(S, segment) == pytest.approx(1.0)


def test_refinement_stability():
    # doubling the resolution moves the sup by well under 5% for low-degree
    # polynomials on the unit square
    polys = [S, SBAR, S * SBAR, S**2 + SBAR**2, (S + SBAR) ** 2, S**3 * SBAR]
    for poly in polys:
        base = sup_norm_on_grid(poly, SQUARE.with_grid_n(33))
        refined = sup_norm_on_grid(poly, SQUARE.with_grid_n(66))
        assert abs(refined - base) <= 0.05 * max(base, 1e-12)


def test_vectorized_matches_scalar():
    poly = (S + 2 * SBAR) ** 2
    pts = SQUARE.grid_points()
    vals = evaluate_on_grid(poly, pts)
    for idx in (0, 57, len(pts) - 1):
        assert vals[idx] == pytest.approx(poly.evaluate(complex(pts[idx])))


def test_json_round_trip():
    rect = CompactRectangle(Fraction(-3, 2), Fraction(1, 2), Fraction(0), Fraction(2), 21)
    assert CompactRectangle.from_json(rect.to_json()) == rect
