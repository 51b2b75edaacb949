import json
from importlib.resources import files

import pytest

from vkparity.cli import corpus_load

ACCEPTANCE_LINES = []

KNOTS = ["2.1", "3.1", "3.5", "4.1", "4.4", "4.75", "4.107", "5.2012"]


@pytest.fixture(scope="session")
def corpus():
    return corpus_load()


@pytest.fixture(scope="session")
def calibration():
    return json.loads(files("vkparity").joinpath("data/calibration.json").read_text())


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
