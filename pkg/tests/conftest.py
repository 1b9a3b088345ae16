import re
from collections import OrderedDict

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_results: "OrderedDict[int, list]" = OrderedDict()


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results.setdefault(int(m.group(1)), []).append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_results):
        entries = _results[k]
        ok = all(outcome == "passed" for _, outcome in entries)
        failed = [name for name, outcome in entries if outcome != "passed"]
        detail = f"{len(entries) - len(failed)}/{len(entries)} tests passed"
        if failed:
            detail += "; failing: " + ", ".join(failed)
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}")
