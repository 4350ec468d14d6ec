import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    log = sys.modules.get("test_acceptance")
    if log is None or not log.ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(log.ACCEPTANCE_LOG):
        terminalreporter.write_line(line)
