import pytest

_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(label, description): marks a test as one acceptance criterion",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        label = str(marker.args[0])
        description = marker.args[1] if len(marker.args) > 1 else ""
        passed_so_far, _ = _RESULTS.get(label, (True, description))
        _RESULTS[label] = (passed_so_far and report.passed, description)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for label in sorted(_RESULTS, key=lambda s: (len(s), s)):
        ok, description = _RESULTS[label]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {label:>2} [{status}] {description}")
