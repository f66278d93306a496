"""Shared fixtures and the acceptance-summary hook.

Tests in test_acceptance.py carry a ``criterion(number, title)`` marker;
after the run, one PASS/FAIL line per criterion is printed so the
acceptance status is readable at a glance.
"""

import pytest

from quadricmaps.gallery import gallery_map


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(number, title): acceptance criterion metadata"
    )


_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        num, title = marker.args
        _ACCEPTANCE[num] = (title, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        title, passed = _ACCEPTANCE[num]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {title}")


@pytest.fixture(scope="session")
def w_flat():
    return gallery_map("w-flat")


@pytest.fixture(scope="session")
def real_part():
    return gallery_map("real-part")


@pytest.fixture(scope="session")
def linear_embedding():
    return gallery_map("linear")
