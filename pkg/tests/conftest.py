import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "exact"))


def pytest_addoption(parser):
    parser.addoption("--long-running", action="store_true", default=False,
                     help="also run hour-scale jobs (degree-5 enumeration)")


def pytest_configure(config):
    if config.getoption("--long-running"):
        os.environ["SOSFIELDS_LONG"] = "1"


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long-running") or os.environ.get("SOSFIELDS_LONG") == "1":
        return
    skip = pytest.mark.skip(reason="long-running; enable with --long-running")
    for item in items:
        if "long_running" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def fields():
    from sosfields.numfield import NumberField, compositum_quadratic

    return {
        "Q": NumberField([0, 1], name="Q"),
        "Q2": NumberField([-2, 0, 1], name="Q(sqrt2)"),
        "Q3": NumberField([-3, 0, 1], name="Q(sqrt3)"),
        "Q5": NumberField([-5, 0, 1], name="Q(sqrt5)"),
        "Q6": NumberField([-6, 0, 1], name="Q(sqrt6)"),
        "Q7": NumberField([-7, 0, 1], name="Q(sqrt7)"),
        "K7": NumberField([-1, -2, 1, 1], name="K7"),
        "rho": NumberField([-2, -4, 0, 1], name="Q(rho)"),
        "Q25": compositum_quadratic(2, 5),
        "K20": NumberField([5, 0, -5, 0, 1], name="K20"),
    }


_VERDICTS = pytest.StashKey[list]()


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""
    lines = request.config.stash.setdefault(_VERDICTS, [])

    def record(criterion: str, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'}  criterion {criterion}: {detail}"
        lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_VERDICTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
