import pytest

_LINES = pytest.StashKey[list]()


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""
    lines = request.config.stash.setdefault(_LINES, [])

    def record(label, ok, detail):
        line = f"{label}: {'PASS' if ok else 'FAIL'} ({detail})"
        lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
