import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _private_cache(tmp_path, monkeypatch):
    # keep test runs away from the user's cache directory
    monkeypatch.setenv("FPL_CACHE", str(tmp_path / "cache"))
    yield


def pytest_configure(config):
    os.environ.setdefault("FPLPOLY_PURE", "0")
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number")


# one PASS/FAIL line per acceptance criterion, aggregated over its tests
_CRIT = {}


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        if hasattr(report, "wasxfail"):
            outcome = "xfailed" if report.skipped else "xpassed"
        else:
            outcome = report.outcome
        _CRIT.setdefault(crit, []).append(outcome)


@pytest.fixture(autouse=True)
def _criterion_tag(request):
    m = request.node.get_closest_marker("criterion")
    if m is not None:
        request.node.user_properties.append(("criterion", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _CRIT:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(_CRIT):
        outs = _CRIT[k]
        verdict = "PASS" if all(o == "passed" for o in outs) else "FAIL"
        tally = ", ".join(f"{outs.count(o)} {o}" for o in sorted(set(outs)))
        tr.write_line(f"criterion {k:2d}: {verdict}  ({tally})")
