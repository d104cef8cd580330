import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

AIRPLANE_SOURCE = "비행기 음식이 안 막였습니다 ."
AIRPLANE_TARGET_0 = "비행기 음식을 안 먹었습니다 ."
AIRPLANE_TARGET_1 = "비행기 음식이 안 맞았습니다 ."
AIRPLANE_M2 = (
    "S 비행기 음식이 안 막였습니다 .\n"
    "A 1 2|||R:NOUN+ADP → NOUN+ADP|||음식을|||REQUIRED|||-NONE-|||0\n"
    "A 3 4|||R:SPELL|||먹었습니다|||REQUIRED|||-NONE-|||0\n"
    "A 3 4|||R:SPELL|||맞았습니다|||REQUIRED|||-NONE-|||1\n"
)


@pytest.fixture
def airplane_m2():
    return AIRPLANE_M2


_acceptance = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance.append(report)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for report in _acceptance:
        name = report.nodeid.split("::")[-1]
        outcome = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        line = f"{outcome:4}  {name}  ({report.duration:.2f}s)"
        if report.outcome == "skipped" and isinstance(report.longrepr, tuple):
            line += f"  -- {report.longrepr[2]}"
        terminalreporter.write_line(line)
