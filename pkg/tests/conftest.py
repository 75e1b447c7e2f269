import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def fig2_peak():
    from optodark import NetworkParams

    return NetworkParams(
        gamma1=1e-5, gamma2=1e-5, kappa=0.1, kappa_s=0.1, delta_c=1.0, delta_s=1.0,
        g1=0.15, g2=0.15, gs1=0.1, nbar1=100.0, nbar2=100.0,
    )


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines):
        terminalreporter.write_line(lines[key])
