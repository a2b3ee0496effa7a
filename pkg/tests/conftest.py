from functools import lru_cache

import pytest

from stpart.graphs import complete_graph
from stpart.search import enumerate_st_partitions

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def optimal_partitions_of_kn(n):
    en = enumerate_st_partitions(complete_graph(n), n - 2)
    parts = list(en)
    assert en.report.exhausted
    return tuple(parts)


@pytest.fixture
def optimal_kn():
    return optimal_partitions_of_kn


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
