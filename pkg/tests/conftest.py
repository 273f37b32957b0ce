"""Shared pytest hooks: echo the acceptance report in the terminal summary."""

import acceptance_report


def pytest_terminal_summary(terminalreporter):
    lines = acceptance_report.LINES
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
