import sys


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance scoreboard after the test summary.

    The acceptance tests print their PASS/FAIL lines as they run, but
    those go through the capture machinery; this hook writes them once
    more where they are always visible.
    """
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "SCOREBOARD", None) if mod else None
    if lines:
        terminalreporter.section("acceptance scoreboard")
        for line in lines:
            terminalreporter.write_line(line)
