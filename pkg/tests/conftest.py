"""Shared pytest hooks: the acceptance summary table."""

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
    passed = sum(line.startswith("PASS") for line in ACCEPTANCE_LINES.values())
    terminalreporter.write_line(f"{passed}/{len(ACCEPTANCE_LINES)} criteria passed")
