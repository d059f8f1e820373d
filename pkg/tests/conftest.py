import pytest

from orbitasym.enumeration import count_table


@pytest.fixture(scope="session")
def tables():
    cache = {}

    def get(ell, max_n):
        key = ell
        if key not in cache or cache[key].max_n < max_n:
            cache[key] = count_table(ell, max_n)
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
