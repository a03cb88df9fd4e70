from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from twistmoyal.polyalg import CARTESIAN, Polynomial2
from twistmoyal.scalars import QI2
from twistmoyal.starprod import DeformationParams

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_q = st.fractions(min_value=-6, max_value=6, max_denominator=6)
tiny_q = st.fractions(min_value=Fraction(-1, 4), max_value=Fraction(1, 4), max_denominator=40)


@st.composite
def scalars(draw):
    return QI2.from_parts(draw(small_q), draw(small_q), draw(small_q), draw(small_q))


@st.composite
def polys(draw, max_degree=4, max_terms=4, basis=CARTESIAN):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        deg = draw(st.integers(0, max_degree))
        m = draw(st.integers(0, deg))
        terms[(m, deg - m)] = QI2.from_parts(draw(small_q), draw(small_q))
    return Polynomial2(terms, basis, "exact")


@st.composite
def params(draw, twisted=True):
    theta = draw(st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=8).filter(lambda t: t > 0))
    if not twisted:
        return DeformationParams(theta)
    return DeformationParams(theta, draw(tiny_q), draw(tiny_q))
