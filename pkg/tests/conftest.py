import re

_CRITERIA: dict[int, list[str]] = {}
_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")


def pytest_runtest_logreport(report):
    m = _PATTERN.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA.setdefault(int(m.group(1)), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        ok = all(o == "passed" for o in _CRITERIA[num])
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}")
