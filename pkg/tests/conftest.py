"""Shared hypothesis strategies for the model's exact objects."""

from fractions import Fraction

import hypothesis.strategies as st

from hilbertfield import (
    Connection,
    Direction,
    FieldSection,
    GaussianRational,
    WirtingerPolynomial,
)

rationals = st.fractions(min_value=Fraction(-4), max_value=Fraction(4), max_denominator=6)

coefficients = st.builds(GaussianRational, rationals, rationals)

# total degree <= 4, a handful of terms
exponent_pairs = st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(
    lambda pq: pq[0] + pq[1] <= 4
)

polynomials = st.dictionaries(exponent_pairs, coefficients, max_size=4).map(WirtingerPolynomial)


@st.composite
def real_polynomials(draw):
    """Real-valued polynomials, built as p + conj(p)."""
    p = draw(polynomials)
    return p + p.conjugate()


directions = st.sampled_from([Direction.D, Direction.DBAR])

sections = st.dictionaries(st.integers(0, 6), polynomials, max_size=3).map(FieldSection)

connections = polynomials.map(lambda k: Connection(k=k))
