import os

import hypothesis
import pytest

from bullygame.model import attrition_game, baseline_game
from bullygame.strategies import induce_normal_form

hypothesis.settings.register_profile("default", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=2000, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): exit criterion, reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _ACCEPTANCE.append((marker.args[0], "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, result in _ACCEPTANCE:
        terminalreporter.write_line(f"{result}  {label}")


@pytest.fixture
def baseline():
    return baseline_game()


@pytest.fixture
def baseline_nf(baseline):
    return induce_normal_form(baseline)


@pytest.fixture
def attrition_nf():
    return induce_normal_form(attrition_game())
