import pytest

_RESULTS: dict[int, list] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    entry = _RESULTS.setdefault(number, [title, True, False])
    if report.failed:
        entry[1] = False
    if report.when == "call":
        entry[2] = True


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok, ran = _RESULTS[number]
        status = "PASS" if ok and ran else ("FAIL" if ran or not ok else "SKIP")
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
