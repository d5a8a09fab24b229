import os

import pytest


def pytest_configure(config):
    # a private cache per run keeps the suite independent of the working directory
    if "FROBSTATS_CACHE" not in os.environ:
        import tempfile

        os.environ["FROBSTATS_CACHE"] = tempfile.mkdtemp(prefix="frobstats-cache-")


@pytest.fixture(scope="session")
def quad_families():
    from frobstats.families import enum_quadratic

    return {g: enum_quadratic(3, g) for g in (1, 2, 3)}


@pytest.fixture(scope="session")
def cyclic_families():
    from frobstats.families import enum_cyclic

    return {d: enum_cyclic(7, 3, d) for d in (3, 4)}


@pytest.fixture(scope="session")
def cubic_family():
    from frobstats.families import enum_cubic

    return enum_cubic(5, 1)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
