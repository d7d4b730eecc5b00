"""Shared fixtures plus per-criterion reporting for the acceptance suite."""

from __future__ import annotations

import pytest

from salign import synthetic

_CRITERION_RESULTS: dict[int, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    number, label = marker
    passed_so_far = _CRITERION_RESULTS.get(number, (label, True))[1]
    _CRITERION_RESULTS[number] = (label, passed_so_far and report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report._criterion = (marker.args[0], marker.args[1])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERION_RESULTS):
        label, passed = _CRITERION_RESULTS[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number} [{label}]: {status}")


@pytest.fixture(scope="session")
def case_corpus_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("case_corpus")
    manifest = synthetic.build_case_corpus(root)
    return manifest


@pytest.fixture(scope="session")
def synthetic_corpus_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("synthetic_corpus")
    manifest = synthetic.build_corpus(root, n=64, dims=(16, 16), seed=11)
    return manifest
