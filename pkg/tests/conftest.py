import pytest

from gdlines import wheel

_criteria: dict[str, str] = {}
_notes: dict[str, list[str]] = {}


@pytest.fixture(scope="session")
def w6():
    return wheel(5)


@pytest.fixture
def note(request):
    """Attach a line to the acceptance summary of the test's criterion."""
    key = request.node.get_closest_marker("criterion").args[0]
    return lambda text: _notes.setdefault(key, []).append(text)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        prev = _criteria.get(key, "PASS")
        _criteria[key] = "FAIL" if rep.failed or prev == "FAIL" else "PASS"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion this test covers")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: int(k)):
        terminalreporter.write_line(f"criterion {key:>2}: {_criteria[key]}")
        for text in _notes.get(key, []):
            terminalreporter.write_line(f"    {text}")
