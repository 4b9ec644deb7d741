import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from bpoly.digraph import Digraph, MixedGraph, enumerate_pairings  # noqa: E402
from bpoly.poly import MultiPoly  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# filled by the acceptance suite; repeated in the terminal summary since
# captured output is hidden for passing tests
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@st.composite
def digraphs(draw, max_n=4, max_m=5, loops=True, min_n=1):
    n = draw(st.integers(min_n, max_n))
    vertex = st.integers(1, n)
    arc = st.tuples(vertex, vertex)
    if not loops:
        arc = arc.filter(lambda a: a[0] != a[1])
    arcs = draw(st.lists(arc, max_size=max_m))
    return Digraph(n, tuple(arcs))


@st.composite
def mixed_graphs(draw, max_n=4, max_m=5):
    D = draw(digraphs(max_n, max_m))
    options = list(enumerate_pairings(D))
    return options[draw(st.integers(0, len(options) - 1))]


@st.composite
def polys(draw, vars=("q", "y", "z"), max_terms=4, max_deg=3):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_deg) for _ in vars]),
        st.fractions(min_value=-5, max_value=5, max_denominator=4),
        max_size=max_terms))
    return MultiPoly(vars, terms)
