"""Shared fixtures and the acceptance-criteria summary section."""

import numpy as np
import pytest

from vevid.corpus import load_corpus


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(label): acceptance criterion checked by this test"
    )
    config._criterion_results = []
    config._criterion_metrics = {}


@pytest.fixture
def record_metric(request):
    """Attach measured values to this test's line in the acceptance report."""
    store = request.config._criterion_metrics.setdefault(request.node.nodeid, {})

    def record(name, value):
        store[name] = value

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        item.config._criterion_results.append(
            (marker.args[0], report.outcome, item.nodeid)
        )


def _format_value(value):
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_criterion_results", [])
    if not results:
        return
    metrics = getattr(config, "_criterion_metrics", {})
    terminalreporter.section("acceptance criteria")
    for label, outcome, nodeid in results:
        status = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        detail = metrics.get(nodeid)
        suffix = ""
        if detail:
            pairs = ", ".join(f"{k}={_format_value(v)}" for k, v in detail.items())
            suffix = f"  [{pairs}]"
        terminalreporter.write_line(f"{status}  {label}{suffix}")


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
