from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from diffnull import DerivOp, DiffPoly, DiffRing

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_q = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))


def theta_st(m, top=2):
    return st.tuples(*[st.integers(0, top)] * m).map(DerivOp)


@st.composite
def diffpolys(draw, ring, max_terms=3, max_vars=2, top=2):
    """Small random differential polynomials in ``ring``."""
    field = ring.field
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        mono = {}
        for _ in range(draw(st.integers(0, max_vars))):
            v = ring.diffvar(draw(st.integers(1, ring.n)), draw(theta_st(ring.m, top)))
            mono[v] = mono.get(v, 0) + draw(st.integers(1, 2))
        c = field.convert(draw(small_q))
        if ring.coeffs == "ratfunc" and draw(st.booleans()):
            x = field.gen(draw(st.integers(1, ring.m)))
            c = c * x + field.convert(draw(st.integers(1, 2)))
            if draw(st.booleans()):
                c = c / (x * x + 1)
        key = tuple(sorted(mono.items(), key=lambda t: (sum(t[0].theta), tuple(t[0].theta), t[0].index)))
        terms[key] = terms.get(key, field.zero) + c
    return DiffPoly(ring, {k: v for k, v in terms.items() if v})


rings = st.sampled_from([DiffRing(1, 1), DiffRing(2, 1), DiffRing(2, 2), DiffRing(2, 1, "ratfunc"),
                         DiffRing(1, 2, "ratfunc")])


@st.composite
def ring_and_polys(draw, count=2, **kw):
    ring = draw(rings)
    return (ring,) + tuple(draw(diffpolys(ring, **kw)) for _ in range(count))


# -- acceptance summary ----------------------------------------------------------------

ACCEPTANCE_RESULTS = {}


@pytest.fixture
def criterion(request):
    """Record a named acceptance criterion's outcome for the terminal summary."""
    names = []

    def register(name):
        names.append(name)

    yield register
    failed = getattr(request.node, "rep_call", None)
    outcome = "FAIL" if failed is None or failed.failed else "PASS"
    for name in names:
        if ACCEPTANCE_RESULTS.get(name) != "FAIL":
            ACCEPTANCE_RESULTS[name] = outcome


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=_criterion_sort_key):
        terminalreporter.write_line(f"{ACCEPTANCE_RESULTS[name]}  {name}")


def _criterion_sort_key(name):
    head = name.split(":")[0].split()[-1]
    return (int(head) if head.isdigit() else 99, name)
