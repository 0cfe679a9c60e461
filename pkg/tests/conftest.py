import pytest

ACCEPTANCE_LINES: list[str] = []


def record(number: int, title: str, ok: bool, seconds: float, detail: str = "") -> str:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({seconds:.1f}s){'  ' + detail if detail else ''}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


@pytest.fixture
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
