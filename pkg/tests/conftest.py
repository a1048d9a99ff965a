"""Shared test plumbing: the acceptance suite registers one line per
criterion here, and the terminal-summary hook prints them after the run so
the pass/fail report is visible regardless of output capturing."""

acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.line(line)
