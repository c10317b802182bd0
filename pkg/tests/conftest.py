import time

import pytest

SUITE_BUDGET = 60.0

_results: dict[int, tuple[str, bool]] = {}
_started = time.perf_counter()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): one acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, text = mark.args
    if rep.when == "setup" and rep.passed:
        return
    _results[n] = (text, rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    elapsed = time.perf_counter() - _started
    full = terminalreporter.config.option.file_or_dir in (None, [])
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        text, ok = _results[n]
        if n == 8 and full:
            ok = ok and elapsed < SUITE_BUDGET
            text = f"{text} (full suite {elapsed:.1f} s)"
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")
