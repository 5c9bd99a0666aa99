import pytest

_VERDICTS: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not (report.when == "setup" and report.failed):
        return
    number, title = marker.args
    if report.passed and not hasattr(report, "wasxfail"):
        verdict = "PASS"
    elif hasattr(report, "wasxfail"):
        verdict = "FAIL (expected, see decisions ledger)"
    else:
        verdict = "FAIL"
    _VERDICTS[number] = (verdict, title)


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        verdict, title = _VERDICTS[number]
        terminalreporter.write_line(f"criterion {number}: {verdict.split()[0]:4} {title}" + ("" if verdict in ("PASS", "FAIL") else f" [{verdict[5:]}]"))
