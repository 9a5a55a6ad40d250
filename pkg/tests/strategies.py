"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from qcurrent.scalars import QRational, qpow


@st.composite
def laurent(draw, max_terms=3, spread=3, nonzero=False):
    n = draw(st.integers(1, max_terms))
    x = QRational(0)
    for _ in range(n):
        c = Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 4)))
        x = x + QRational(c) * qpow(draw(st.integers(-spread, spread)))
    if nonzero and x.is_zero():
        x = qpow(draw(st.integers(-spread, spread)))
    return x


@st.composite
def scalars(draw, nonzero=False):
    num = draw(laurent(nonzero=nonzero))
    if draw(st.booleans()):
        return num
    den = draw(laurent(nonzero=True))
    return num / den
