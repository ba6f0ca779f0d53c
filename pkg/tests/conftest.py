import pytest


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and (report.when == "call" or (report.when == "setup" and report.skipped)):
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        print(f"\n[ACCEPTANCE] {marker.args[0]}: {status}", flush=True)


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): names the acceptance criterion a test implements"
    )
