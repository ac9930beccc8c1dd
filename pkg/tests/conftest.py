import os
import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from pfgrammar.algebra import Polynomial  # noqa: E402

VARS = ["A", "S", "x", "w"]

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
nonzero_rationals = rationals.filter(lambda f: f != 0)


@st.composite
def polynomials(draw, variables=VARS, min_exp=-2, max_exp=3, max_terms=4):
    n = draw(st.integers(0, max_terms))
    pairs = []
    for _ in range(n):
        exps = {v: draw(st.integers(min_exp, max_exp)) for v in draw(st.sets(st.sampled_from(variables), max_size=3))}
        pairs.append((draw(rationals), exps))
    return Polynomial.from_terms(pairs)


def assert_canonical(p: Polynomial):
    for m, c in p.terms.items():
        assert c != 0
        assert all(e != 0 for _, e in m)
        assert list(m) == sorted(m)
        assert len({v for v, _ in m}) == len(m)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
