import pytest
from hypothesis import HealthCheck, settings, strategies as st

from ffprimes.ffpoly import Poly, field_of_order

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIELD_ORDERS = (2, 3, 4, 5, 8, 9)


def field(q):
    return field_of_order(q)


def P(F, text):
    return Poly.parse(F, text)


@st.composite
def polys(draw, F, max_deg=8, nonzero=False):
    n = draw(st.integers(0 if not nonzero else 1, max_deg + 1))
    cs = draw(st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n))
    f = Poly(F, cs)
    if nonzero and f.is_zero():
        f = Poly.one(F)
    return f


@pytest.fixture
def F2():
    return field_of_order(2)


@pytest.fixture
def F3():
    return field_of_order(3)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
