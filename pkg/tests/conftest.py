import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from frobtool import Polynomial, RingSpec

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

NAMES = ("x", "y", "z", "w")


def ring_of(p, n, order="grevlex"):
    return RingSpec(p, NAMES[:n], order)


@st.composite
def polys(draw, ring, max_terms=5, max_exp=4, allow_zero=True):
    n = ring.nvars
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_exp)] * n),
        st.integers(0 if allow_zero else 1, ring.p - 1),
        max_size=max_terms,
    ))
    f = Polynomial(ring, terms)
    if not allow_zero and not f:
        f = Polynomial.monomial(ring, (1,) + (0,) * (n - 1))
    return f


def rand_poly(ring, rng: random.Random, terms=4, max_deg=4, constant=True):
    out = {}
    for _ in range(terms):
        d = rng.randint(0 if constant else 1, max_deg)
        m = [0] * ring.nvars
        for _ in range(d):
            m[rng.randrange(ring.nvars)] += 1
        out[tuple(m)] = rng.randrange(1, ring.p)
    return Polynomial(ring, out)


@pytest.fixture
def rng():
    return random.Random(20240917)


# acceptance criteria report: one line per criterion in the terminal summary

def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not rep.failed:
        return
    number, title = marker.args
    ok = item.config._criteria.get(number, (title, True))[1] and rep.passed
    item.config._criteria[number] = (title, ok)


def pytest_terminal_summary(terminalreporter, config):
    if not config._criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(config._criteria):
        title, ok = config._criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
