"""Shared pytest wiring.

Publishes the per-criterion verdict lines collected by the acceptance
suite into the terminal summary, so they are visible in captured output.
"""

from __future__ import annotations

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "REPORT", None) if module else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
