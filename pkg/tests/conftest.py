import time

import pytest

# criterion number -> [title, all parametrized cases passed so far]
_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or (report.when != "call" and report.passed):
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, [title, True])
    entry[1] = entry[1] and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title}")


class Stopwatch:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


@pytest.fixture
def stopwatch():
    return Stopwatch
