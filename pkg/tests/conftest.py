import os
import sys

sys.path.insert(0, os.path.dirname(__file__))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            name = getattr(rep, "nodeid", "")
            if "test_acceptance" in name and "::test_c" in name:
                label = name.split("::")[-1]
                lines.append((label, outcome.upper()))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for label, outcome in sorted(lines):
            terminalreporter.write_line(f"{outcome:6s} {label}")
