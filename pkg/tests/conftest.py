from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from slant_hankel.symbol_algebra import ExactComplex, HarmonicSymbol

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fractions = st.builds(
    Fraction, st.integers(-9, 9), st.integers(1, 4)
)
exact_complex = st.builds(ExactComplex, small_fractions, small_fractions)


@st.composite
def coanalytic_symbols(draw, max_degree=8, min_degree=0):
    d = draw(st.integers(min_degree, max_degree))
    return HarmonicSymbol.coanalytic(draw(st.lists(exact_complex, min_size=d + 1, max_size=d + 1)))


@st.composite
def harmonic_symbols(draw, max_degree=6):
    anti = draw(st.dictionaries(st.integers(0, max_degree), exact_complex, max_size=max_degree + 1))
    analytic = draw(st.dictionaries(st.integers(1, max_degree), exact_complex, max_size=max_degree))
    return HarmonicSymbol(anti, analytic)


# one summary line per acceptance criterion ------------------------------------

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion id")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "passed": 0, "failed": []})
    if report.when == "call" and report.passed:
        entry["passed"] += 1
    elif report.failed:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if not entry["failed"] else "FAIL"
        line = f"criterion {number} [{status}] {entry['title']}: {entry['passed']} checks passed"
        if entry["failed"]:
            line += f", {len(entry['failed'])} failed: " + ", ".join(entry["failed"])
        terminalreporter.write_line(line)
