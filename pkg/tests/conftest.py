import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from updown.core import Action, Biaction, SetBand
from updown.lab import fixture

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def actions(draw, max_c=3, max_s=3):
    nc = draw(st.integers(1, max_c))
    ns = draw(st.integers(0, max_s))
    table = draw(st.lists(st.lists(st.integers(0, nc - 1), min_size=ns, max_size=ns),
                          min_size=nc, max_size=nc))
    return Action([f"c{i}" for i in range(nc)], [f"s{i}" for i in range(ns)], table)


@st.composite
def biactions(draw, max_c=3, max_d=2, max_u=2):
    nc = draw(st.integers(1, max_c))
    nd = draw(st.integers(0, max_d))
    nu = draw(st.integers(0, max_u))
    row = lambda k: st.lists(st.integers(0, nc - 1), min_size=k, max_size=k)
    down = draw(st.lists(row(nd), min_size=nc, max_size=nc))
    up = draw(st.lists(row(nu), min_size=nc, max_size=nc))
    return Biaction([f"c{i}" for i in range(nc)], [f"s{i}" for i in range(nd)],
                    [f"t{i}" for i in range(nu)], down, up)


@st.composite
def bands(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    mul = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n),
                        min_size=n, max_size=n))
    return SetBand([f"x{i}" for i in range(n)], mul)


@pytest.fixture
def ex47():
    return fixture("example-4.7").algebra


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
