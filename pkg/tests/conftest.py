import pytest

from pmreconf.graph import Multigraph
from pmreconf.instances import SpmrInstance


def polygon(k, chords=()):
    """Cycle 0..k-1 (edge i joins i and i+1) followed by the given chords."""
    edges = [(i, (i + 1) % k) for i in range(k)] + [tuple(c) for c in chords]
    return Multigraph(k, tuple(edges))


def ids(g, pairs):
    """Edge ids for vertex pairs; the lowest id wins among parallel edges."""
    out = set()
    for a, b in pairs:
        out.add(min(e for e, (u, v) in enumerate(g.edges) if {u, v} == {a, b}))
    return frozenset(out)


def make_instance(k, chords, m_pairs, n_pairs):
    g = polygon(k, chords)
    return SpmrInstance(g, ids(g, m_pairs), ids(g, n_pairs), (tuple(range(k)),))


@pytest.fixture
def octagon():
    # chords {0,3} and {4,7}; expected gap 4 and opt 2
    return make_instance(
        8, [(0, 3), (4, 7)], [(0, 1), (2, 3), (4, 5), (6, 7)], [(1, 2), (3, 0), (5, 6), (7, 4)]
    )


@pytest.fixture
def hexagon():
    # chord {0,3}; expected gap 2 and opt 1
    return make_instance(6, [(0, 3)], [(0, 1), (2, 3), (4, 5)], [(1, 2), (3, 4), (5, 0)])


# --- one summary line per acceptance criterion -------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    num, title = mark.args
    prev = _CRITERIA.get(num, (title, True))
    _CRITERIA[num] = (title, prev[1] and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, ok = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}")
