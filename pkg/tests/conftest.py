import pytest

from fltk.hf_kernel import make, null
from fltk.hierarchy import enumerate_stage


@pytest.fixture(scope="session")
def F1():
    return enumerate_stage(1)


@pytest.fixture(scope="session")
def F2():
    return enumerate_stage(2)


@pytest.fixture(scope="session")
def F3():
    return enumerate_stage(3)


@pytest.fixture(scope="session")
def z():
    return null()


@pytest.fixture(scope="session")
def id0():
    """[0->0], the identity on {0}."""
    return make([(null(), null())])


_verdicts = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for the acceptance summary."""
    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _verdicts.append((number, line))
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_verdicts):
        terminalreporter.write_line(line)
