import re

import pytest
from hypothesis import strategies as st

from a1tk.generators import gen_bounded_ratio, gen_nonincreasing_hardy, shuffle_cells
from a1tk.weights import StepWeight

RATIOS = (1.5, 2.0, 8.0)


def bounded_ratio_corpus(size, max_n=64):
    """Seeds 0..size-1; n cycles through 1..max_n and R through RATIOS."""
    return [gen_bounded_ratio(1 + s % max_n, RATIOS[s % 3], s) for s in range(size)]


def nonincreasing_corpus(size, max_n=64):
    return [gen_nonincreasing_hardy(1 + s % max_n, 1.0 + 3.0 * (s % 7) / 6, s) for s in range(size)]


@pytest.fixture(scope="session")
def corpus():
    return bounded_ratio_corpus(1000)


@pytest.fixture(scope="session")
def shuffled_corpus(corpus):
    return [shuffle_cells(w, 10_000 + k) for k, w in enumerate(corpus)]


@st.composite
def step_weights(draw, max_cells=12, monotone=False):
    n = draw(st.integers(1, max_cells))
    lengths = draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n))
    values = draw(st.lists(st.floats(0.01, 100.0), min_size=n, max_size=n))
    if monotone:
        values = sorted(values, reverse=True)
    return StepWeight.from_lengths(lengths, values)


# -- one summary line per acceptance criterion --------------------------------

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed:
        _CRITERIA[key] = _CRITERIA.get(key, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), ok in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {name.replace('_', ' ')}")
