from __future__ import annotations

import numpy as np
import pytest

from qcspectra.qc import PolyMatrix

from oracles import TANNER_EXPONENTS

_acceptance_results: list[tuple[str, str, str]] = []


@pytest.fixture(scope="session")
def tanner() -> PolyMatrix:
    return PolyMatrix.from_exponents(31, TANNER_EXPONENTS)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label = marker.args[0] if marker.args else item.name
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        _acceptance_results.append((label, status, item.name))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for label, status, name in _acceptance_results:
        terminalreporter.write_line(f"{status}  {label}  ({name})")
