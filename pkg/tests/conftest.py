from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from reebspec import QuadExt

# exact arithmetic on large coordinates has uneven running times
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

SQUAREFREE = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23]


@st.composite
def quadratics(draw, d=None, bound=50):
    """Irrational (p + q*sqrt d)/s with small coordinates."""
    dd = d if d is not None else draw(st.sampled_from(SQUAREFREE))
    p = draw(st.integers(-bound, bound))
    q = draw(st.integers(-bound, bound).filter(bool))
    s = draw(st.integers(1, bound))
    return QuadExt(p, q, s, dd)


@st.composite
def unit_quadratics(draw, d=None):
    """Irrational quadratic in (0, 1)."""
    return draw(quadratics(d=d)).frac()


def to_decimal(x: QuadExt, prec: int = 60) -> Decimal:
    """Independent high-precision value of x (prec significant digits)."""
    with localcontext() as ctx:
        ctx.prec = prec
        root = Decimal(x.d).sqrt() if x.q else Decimal(0)
        return (Decimal(x.p) + Decimal(x.q) * root) / Decimal(x.s)


def decimal_floor(x: QuadExt) -> int:
    with localcontext() as ctx:
        ctx.prec = 80
        return int(to_decimal(x, 80).to_integral_value(rounding="ROUND_FLOOR"))


@pytest.fixture
def sqrt2() -> QuadExt:
    return QuadExt.sqrt(2)


@pytest.fixture
def half() -> Fraction:
    return Fraction(1, 2)
