import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from locarray.model import SutModel, TestArray, fixture


@pytest.fixture(scope="session")
def covering5():
    return fixture("covering5")


@pytest.fixture(scope="session")
def locating7():
    return fixture("locating7")


@pytest.fixture(scope="session")
def locating11():
    return fixture("locating11")


def brute_rho(cells, interaction_pairs):
    """Row numbers (1-based) covering a set of (factor, level) pairs, by double loop."""
    rows = set()
    for r, row in enumerate(cells, start=1):
        if all(row[f - 1] == l for f, l in interaction_pairs):
            rows.add(r)
    return frozenset(rows)


def brute_interactions(k, v, t):
    """Strength-t interactions as frozensets of (factor, level), via subsets of all pairs."""
    pairs = [(f, l) for f in range(1, k + 1) for l in range(v)]
    out = []
    for combo in itertools.combinations(pairs, t):
        if len({f for f, _ in combo}) == t:
            out.append(frozenset(combo))
    return out


@st.composite
def small_arrays(draw, max_k=4, max_v=3, max_rows=7):
    v = draw(st.integers(2, max_v))
    k = draw(st.integers(2, max_k))
    t = draw(st.integers(1, min(k, 2)))
    n = draw(st.integers(1, max_rows))
    cells = draw(st.lists(st.lists(st.integers(0, v - 1), min_size=k, max_size=k), min_size=n, max_size=n))
    return TestArray(np.array(cells), SutModel(k, v, t))


def definitional_locating(cells, k, v, t):
    """(1-bar, t)-locating straight from the definition: every family of at most
    one interaction, the empty family included, gets its own row set."""
    cells = [tuple(int(x) for x in row) for row in cells]
    sets = [frozenset()] + [brute_rho(cells, T) for T in brute_interactions(k, v, t)]
    return len(set(sets)) == len(sets)


# -- acceptance reporting ---------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and not report.failed and not report.skipped):
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "status": [], "notes": []})
    if report.failed:
        entry["status"].append("FAIL")
    elif report.skipped:
        entry["status"].append("SKIP")
    elif report.when == "call":
        entry["status"].append("PASS")
    entry["notes"].extend(str(value) for name, value in item.user_properties if name == "detail")
    item.user_properties[:] = [p for p in item.user_properties if p[0] != "detail"]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria, key=str):
        entry = _criteria[number]
        status = entry["status"]
        if "FAIL" in status:
            verdict = "FAIL"
        elif "PASS" in status:
            verdict = "PASS"
        else:
            verdict = "NOT RUN"
        terminalreporter.write_line(f"criterion {number} {verdict}: {entry['title']}")
        for note in entry["notes"]:
            terminalreporter.write_line(f"    {note}")
