import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from polytemper.root_system import A2, B2, build_root_system, product_a1

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

PRESETS = {
    "A2(1)": A2(1),
    "A2(2)": A2(2),
    "A2(4)": A2(4),
    "A2(8)": A2(8),
    "B2(3)": B2(3),
    "B2(5)": B2(5),
    "B2(10)": B2(10),
    "ProductA1(1)": product_a1([0.5]),
    "ProductA1(2)": product_a1([0.5, 0.5]),
    "ProductA1(3)": product_a1([0.5, 1.0, 2.0]),
}


@pytest.fixture(params=sorted(PRESETS))
def rs(request):
    return build_root_system(PRESETS[request.param])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_dominant(rs, rng, scale=3.0):
    """A random point of the closed dominant cone: nonnegative combination of coweights."""
    t = rng.uniform(0.0, scale, size=rs.rank)
    return rs.functional(t @ rs.coweights)


ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
