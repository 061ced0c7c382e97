import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from curved_maxwell.geometry import SpaceModel

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def s3():
    return SpaceModel.s3()


@pytest.fixture
def h3():
    return SpaceModel.h3()


@pytest.fixture(params=["s3", "h3"])
def model(request):
    return SpaceModel.s3() if request.param == "s3" else SpaceModel.h3()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance_log(request):
    """Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""
    return request.config.stash[ACCEPTANCE_KEY].append


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
