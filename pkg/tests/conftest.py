import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from midbol.corpus import bundled_bol_loops, full_corpus, groups, small_loops  # noqa: E402
from midbol.table import relabel  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus():
    return full_corpus()


@pytest.fixture(scope="session")
def small():
    return small_loops()


@pytest.fixture(scope="session")
def bundled_groups():
    return groups()


@pytest.fixture(scope="session")
def right_bol8():
    return bundled_bol_loops("right_bol")


@pytest.fixture(scope="session")
def left_bol8():
    return bundled_bol_loops("left_bol")


SMALL = list(small_loops().values())
CORPUS = list(full_corpus().values())


def relabelled(loops):
    """A loop from ``loops`` with its non-identity elements shuffled."""
    return st.sampled_from(loops).flatmap(
        lambda L: st.permutations(list(range(1, L.n))).map(lambda p: relabel(L, [0] + list(p))))


small_loop_st = relabelled(SMALL)
corpus_loop_st = relabelled(CORPUS)
