import sys


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance `criterion N` lines after the test run so they
    survive output capture."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ANNOUNCED", None) if mod else None
    if lines:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance summary:")
        for line in lines:
            terminalreporter.write_line("  " + line)
