import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from superjm.exact import Matrix

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

SEED = 7

small_ints = st.integers(min_value=-3, max_value=3)
rationals = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def square_matrices(draw, max_n=5, entries=rationals):
    n = draw(st.integers(1, max_n))
    return Matrix([[draw(entries) for _ in range(n)] for _ in range(n)], n)


@st.composite
def matrices(draw, max_rows=5, max_cols=5, entries=small_ints):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return Matrix([[draw(entries) for _ in range(c)] for _ in range(r)], c)


def pytest_terminal_summary(terminalreporter):
    """Repeat the per-criterion acceptance verdicts at the end of the run."""
    module = sys.modules.get("test_acceptance")
    if module is None or not module.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.VERDICTS):
        terminalreporter.write_line(module.VERDICTS[number])
