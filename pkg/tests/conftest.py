import pytest

_LINES = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion; the lines are
    repeated in the terminal summary."""

    def report(key, title, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {title} -- {detail}"
        _LINES.append(line)
        print(line)
        assert ok, line

    return report


def _order(line):
    key = line.split("criterion ")[1].split(":")[0]
    digits = "".join(ch for ch in key if ch.isdigit())
    return int(digits), key


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=_order):
            terminalreporter.write_line(line)
