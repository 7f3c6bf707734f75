"""Exact arithmetic, derivatives and evaluation of Wirtinger polynomials."""

from fractions import Fraction

import pytest
from hypothesis import given

from conftest import coefficients, directions, polynomials
from hilbertfield import (
    Direction,
    GaussianRational,
    WirtingerPolynomial,
    laplacian,
    ONE,
    S,
    SBAR,
    ZERO,
)

D, DBAR = Direction.D, Direction.DBAR
I = GaussianRational(0, 1)

# five fixed sample points for evaluation cross-checks
SAMPLE_POINTS = [0.3 + 0.7j, -1.1 + 0.2j, 2.0 - 1.5j, -0.4 - 0.9j, 1.0 + 1.0j]


class TestGaussianRational:
    def test_exact_division(self):
        value = GaussianRational(1, 2) / GaussianRational(3, -1)
        assert value == GaussianRational(Fraction(1, 10), Fraction(7, 10))

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            GaussianRational(1) / GaussianRational(0)

    def test_third_is_exact(self):
        third = GaussianRational(1) / GaussianRational(3)
        assert third * 3 == GaussianRational(1)

    @given(coefficients, coefficients)
    def test_mul_conjugate_homomorphism(self, a, b):
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()

    @given(coefficients)
    def test_conjugate_involution(self, a):
        assert a.conjugate().conjugate() == a

    @given(coefficients, coefficients)
    def test_division_inverts_multiplication(self, a, b):
        if b:
            assert (a * b) / b == a


class TestAddition:
    def test_sum_of_variables(self):
        total = S + SBAR
        assert total == WirtingerPolynomial({(1, 0): 1, (0, 1): 1})

    @given(polynomials)
    def test_additive_identity(self, p):
        assert p + ZERO == p

    def test_cancellation_gives_canonical_zero(self):
        p = S * SBAR
        assert (p + (-p)).is_zero
        assert not (p + (-p)).terms


class TestMultiplication:
    def test_basic_product(self):
        assert S * SBAR == WirtingerPolynomial({(1, 1): 1})

    @given(polynomials)
    def test_multiplicative_identity(self, p):
        assert p * ONE == p

    def test_square_of_sum(self):
        # hand expansion of (s + sbar)^2
        expected = WirtingerPolynomial({(2, 0): 1, (1, 1): 2, (0, 2): 1})
        square = (S + SBAR) ** 2
        assert square == expected
        for z in SAMPLE_POINTS:
            assert square.evaluate(z) == pytest.approx(((S + SBAR).evaluate(z)) ** 2)


class TestConjugate:
    def test_swaps_variables(self):
        assert SBAR.conjugate() == S

    def test_conjugates_coefficients(self):
        assert (I * S).conjugate() == GaussianRational(0, -1) * SBAR

    def test_real_fixed_point(self):
        g = S * SBAR
        assert g.conjugate() == g
        assert g.is_real_valued()

    def test_mixed_coefficients_not_real(self):
        assert not (I * S).is_real_valued()


class TestDerivatives:
    def test_product_variable(self):
        assert (S * SBAR).derivative(D) == SBAR

    def test_conjugate_variable_is_constant(self):
        assert SBAR.derivative(D).is_zero

    def test_power_rule(self):
        assert (S**2 * SBAR).derivative(DBAR) == S**2

    @given(polynomials)
    def test_derivatives_commute(self, p):
        assert p.derivative(D).derivative(DBAR) == p.derivative(DBAR).derivative(D)

    @given(polynomials, polynomials, directions)
    def test_scalar_leibniz(self, a, b, d):
        assert (a * b).derivative(d) == a.derivative(d) * b + a * b.derivative(d)

    @given(polynomials)
    def test_conjugate_swaps_derivative(self, p):
        assert p.derivative(D).conjugate() == p.conjugate().derivative(DBAR)

    @given(polynomials)
    def test_real_valued_derivative_identity(self, p):
        # for real-valued g: conj(dg/ds) equals dg/dsbar
        g = p + p.conjugate()
        assert g.derivative(D).conjugate() == g.derivative(DBAR)


class TestLaplacian:
    def test_modulus_squared(self):
        p = S * SBAR
        oracle = 4 * p.derivative(D).derivative(DBAR)
        assert laplacian(p) == oracle == WirtingerPolynomial.constant(4)

    def test_harmonic(self):
        assert laplacian(S**2 + SBAR**2).is_zero

    def test_modulus_fourth(self):
        p = (S * SBAR) ** 2
        oracle = 4 * p.derivative(D).derivative(DBAR)
        assert laplacian(p) == oracle == 16 * (S * SBAR)


class TestEvaluate:
    def test_modulus_squared(self):
        assert (S * SBAR).evaluate(1 + 1j) == pytest.approx(2.0)

    def test_zero(self):
        assert ZERO.evaluate(3.7 - 2j) == 0

    def test_twice_real_part(self):
        assert (S + SBAR).evaluate(3 + 4j) == pytest.approx(6.0)

    @given(polynomials, polynomials)
    def test_ring_morphism(self, a, b):
        for z in SAMPLE_POINTS:
            scale = 1 + abs(a.evaluate(z)) + abs(b.evaluate(z))
            assert abs((a + b).evaluate(z) - (a.evaluate(z) + b.evaluate(z))) <= 1e-9 * scale
            assert abs((a * b).evaluate(z) - a.evaluate(z) * b.evaluate(z)) <= 1e-9 * scale**2


class TestCanonicalForm:
    def test_no_zero_coefficients_stored(self):
        p = WirtingerPolynomial({(1, 0): 1, (2, 2): 0})
        assert set(p.terms) == {(1, 0)}

    def test_negative_exponents_rejected(self):
        with pytest.raises(ValueError):
            WirtingerPolynomial({(-1, 0): 1})

    def test_total_degree(self):
        assert ZERO.total_degree() == -1
        assert ONE.total_degree() == 0
        assert (S**2 * SBAR).total_degree() == 3

    @given(polynomials, polynomials)
    def test_equality_is_term_map_equality(self, a, b):
        assert (a == b) == (a.terms == b.terms)


class TestSerialization:
    @given(polynomials)
    def test_round_trip_exact(self, p):
        assert WirtingerPolynomial.from_json_terms(p.to_json_terms()) == p

    def test_record_format(self):
        p = WirtingerPolynomial({(1, 2): GaussianRational(Fraction(1, 2), Fraction(-3, 7))})
        assert p.to_json_terms() == [[1, 2, "1/2", "-3/7"]]

    def test_parses_strings(self):
        p = WirtingerPolynomial.from_json_terms([[0, 0, "2/4", "0"]])
        assert p == WirtingerPolynomial.constant(Fraction(1, 2))
