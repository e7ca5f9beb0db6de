import sys

import pytest
from hypothesis import settings

from nanobeam import BeamSpec, mode_frequencies

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

NON_HINGED = ["clamped-clamped", "clamped-hinged", "clamped-free", "free-free"]
ALL_BC = ["hinged-hinged"] + NON_HINGED


@pytest.fixture
def unit_spec():
    return BeamSpec.unit


@pytest.fixture(scope="session")
def clamped_hinged_table():
    return mode_frequencies(BeamSpec.unit("clamped-hinged"), 15)


@pytest.fixture(scope="session")
def hinged_table():
    return mode_frequencies(BeamSpec.unit("hinged-hinged"), 15)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
