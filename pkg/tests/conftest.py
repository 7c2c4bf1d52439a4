from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from eulerstrata import convex_hull

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def int_points(dim: int, bound: int = 3, min_size: int = 1, max_size: int = 7):
    coord = st.integers(-bound, bound)
    return st.lists(st.tuples(*[coord] * dim), min_size=min_size, max_size=max_size)


def rational_points(dim: int, bound: int = 3, max_den: int = 4,
                    min_size: int = 1, max_size: int = 6):
    coord = st.builds(Fraction, st.integers(-bound * max_den, bound * max_den),
                      st.integers(1, max_den))
    return st.lists(st.tuples(*[coord] * dim), min_size=min_size, max_size=max_size)


def polytopes(dim: int, bound: int = 3, rational: bool = False, max_size: int = 6):
    pts = rational_points(dim, bound, max_size=max_size) if rational \
        else int_points(dim, bound, max_size=max_size)
    return pts.map(convex_hull)
