# tests/conftest.py

import sys
from pathlib import Path

import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from backend.config.logging_config import LoggingConfig  # noqa: E402
from backend.utils.rng import SubstreamFactory  # noqa: E402
from onebit.channel_model.models import SystemConfig  # noqa: E402

LoggingConfig.setup_test_logging()

REPO_ROOT = Path(__file__).parent.parent


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: Monte Carlo heavy test")


@pytest.fixture
def paper_cell() -> SystemConfig:
    """500 m cell with a 100 m exclusion disk, M=200, T=400"""
    return SystemConfig.from_file(REPO_ROOT / "scenarios" / "paper_cell.json")


@pytest.fixture
def small_cell() -> SystemConfig:
    return SystemConfig(M=64, K=8, tau0=2, T=200, rho_u=0.1, seed=11)


@pytest.fixture
def factory() -> SubstreamFactory:
    return SubstreamFactory(1234)


@pytest.fixture
def rng(factory):
    return factory.generator("test")
