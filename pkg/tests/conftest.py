import pytest

from flexcycle.catalog import hexagonal_suspension, icosahedron, octahedron

ACCEPTANCE_LINES = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")


@pytest.fixture
def octa():
    return octahedron()


@pytest.fixture
def hexa():
    return hexagonal_suspension()


@pytest.fixture
def ico():
    return icosahedron()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or report.when != "call":
        return
    number, title = mark.args
    status = "PASS" if report.passed else "FAIL"
    ACCEPTANCE_LINES.append((number, f"ACCEPTANCE {number} {status}: {title} ({report.duration:.2f} s)"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
