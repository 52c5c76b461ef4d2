import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from qloops.config import ModulusConfig, ToleranceConfig

settings.register_profile("qloops", deadline=None, derandomize=True, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qloops")

# acceptance criterion id -> (passed, message); filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture
def cfg():
    return ModulusConfig(complex(0.3, 1.1))


@pytest.fixture
def tol():
    return ToleranceConfig()


@pytest.fixture
def lam(cfg):
    """A generic scalar: t_tau = 1/pi, t_one = e/10."""
    return cfg.elliptic_value(1 / np.pi, np.e / 10)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[cid]
        tr.write_line(f"{'PASS' if ok else 'FAIL'} criterion {cid}: {msg}")
