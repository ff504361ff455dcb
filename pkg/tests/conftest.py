from __future__ import annotations

from pathlib import Path

import pytest

from toricroots.toric import Fan, affine_space, projective_space

DATA = Path(__file__).parent / "data"

_acceptance: dict = {}


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def a1() -> Fan:
    return affine_space(1)


@pytest.fixture
def a2() -> Fan:
    return affine_space(2)


@pytest.fixture
def p1() -> Fan:
    return projective_space(1)


@pytest.fixture
def p2() -> Fan:
    return projective_space(2)


@pytest.fixture
def quadric_cone() -> Fan:
    return Fan(2, ((1, 0), (1, 2)), ((0, 1),))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _acceptance[marker.args[0]] = (report.outcome, doc)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        outcome, doc = _acceptance[number]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {doc}")
