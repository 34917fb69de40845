import numpy as np
import pytest
from hypothesis import settings as hsettings
from hypothesis import strategies as st

from coadjoint.sampling import make_rng
from coadjoint.trig import HalfTrigPoly, TrigPoly

hsettings.register_profile("default", max_examples=25, deadline=None)
hsettings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return make_rng(20240611)


coef = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)


@st.composite
def trig_polys(draw, max_degree=5):
    n = draw(st.integers(0, max_degree))
    cos = np.array(draw(st.lists(coef, min_size=n, max_size=n)))
    sin = np.array(draw(st.lists(coef, min_size=n, max_size=n)))
    return TrigPoly.from_coeffs(draw(coef), cos, sin)


@st.composite
def half_polys(draw, max_degree=4):
    n = draw(st.integers(1, max_degree + 1))
    return HalfTrigPoly(np.array(draw(st.lists(coef, min_size=n, max_size=n))),
                        np.array(draw(st.lists(coef, min_size=n, max_size=n))))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
