import math

import pytest

from subcount import graph as graph_mod
from subcount.instances import clique, cycle, figure1_pattern, gen_planted, path, star

# every Graph built during the session is checked against sum_e min(d_u, d_v) <= 5 m sqrt(m)
DEGREE_SUM_VIOLATIONS: list[str] = []
GRAPHS_SEEN = [0]
_orig_init = graph_mod.Graph.__init__


def _checked_init(self, *args, **kwargs):
    _orig_init(self, *args, **kwargs)
    GRAPHS_SEEN[0] += 1
    if self.m and graph_mod.min_degree_sum(self) > 5 * self.m * math.sqrt(self.m):
        DEGREE_SUM_VIOLATIONS.append(repr(self))


graph_mod.Graph.__init__ = _checked_init


def pytest_sessionfinish(session, exitstatus):
    if DEGREE_SUM_VIOLATIONS:
        session.exitstatus = 1
        print(f"\nmin-degree-sum bound violated on: {DEGREE_SUM_VIOLATIONS[:5]}")


def figure1_instance():
    """K_10 with one planted copy of the Figure-1 pattern tied in by four edges."""
    return gen_planted(clique(10), figure1_pattern(), 1, seed=1, attach=4)


@pytest.fixture(scope="session")
def fig_instance():
    return figure1_instance()


PATTERNS = {
    "edge": path(2),
    "P3": path(3),
    "K3": clique(3),
    "C5": cycle(5),
    "S3": star(3),
    "K4": clique(4),
    "figure1": figure1_pattern(),
}


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
