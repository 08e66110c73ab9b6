from . import test_acceptance as _acc


def pytest_terminal_summary(terminalreporter):
    if _acc.LINES:
        terminalreporter.section("acceptance")
        for line in _acc.LINES:
            terminalreporter.write_line(line)
