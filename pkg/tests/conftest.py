from __future__ import annotations

import numpy as np
from hypothesis import HealthCheck, settings, strategies as st

from staymap.geom import Trajectory, mpq

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def halves(lo: int, hi: int):
    """Rationals k/2 with lo <= k/2 <= hi."""
    return st.integers(2 * lo, 2 * hi).map(lambda k: mpq(k, 2))


@st.composite
def trajectories(draw, dim: int = 1, min_n: int = 2, max_n: int = 12):
    n = draw(st.integers(min_n, max_n))
    dts = draw(st.lists(st.integers(1, 8), min_size=n - 1, max_size=n - 1))
    times = [mpq(0)]
    for dt in dts:
        times.append(times[-1] + mpq(dt, 4))
    coords = [draw(st.lists(st.integers(-12, 12), min_size=dim, max_size=dim)) for _ in range(n)]
    return Trajectory(
        np.array(times, dtype=object),
        np.array([[mpq(c, 4) for c in row] for row in coords], dtype=object),
    )


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
