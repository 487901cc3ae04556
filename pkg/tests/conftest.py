import pytest

_outcomes: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and report.passed:
        return
    number, title = marker.args
    _, failures = _outcomes.setdefault(number, (title, []))
    if report.failed:
        failures.append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        title, failures = _outcomes[number]
        status = "PASS" if not failures else "FAIL"
        line = f"criterion {number}: {status}  {title}"
        if failures:
            line += f"  ({', '.join(failures)})"
        terminalreporter.write_line(line)
