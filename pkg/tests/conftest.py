import re

_CRITERIA: list[tuple[int, str, str]] = []
_NAME = re.compile(r"test_c(\d+)_(\w+?)(?:\[(.*)\])?$")


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        m = _NAME.search(report.nodeid.split("::")[-1])
        if m:
            label = m.group(2).replace("_", " ") + (f" [{m.group(3)}]" if m.group(3) else "")
            _CRITERIA.append((int(m.group(1)), label, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num, label, outcome in sorted(_CRITERIA, key=lambda t: t[0]):
        terminalreporter.write_line(f"criterion {num:2d} {outcome}  {label}")
