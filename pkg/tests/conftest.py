import pytest

_acceptance_lines: list[str] = []


@pytest.fixture
def acceptance_report():
    """Record one PASS/FAIL line per criterion for the terminal summary."""

    def report(criterion: int, ok: bool, detail: str = "") -> None:
        line = f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f" ({detail})"
        print(line)
        _acceptance_lines.append(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)
