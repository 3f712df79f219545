from pathlib import Path

import pytest

from spinflux.spin.calibration import build_rep
from spinflux.spin.spinrep import SpinRep
from spinflux.utils.sampling import SEED_ENV, RationalSampler

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def _no_seed_env(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def sampler() -> RationalSampler:
    return RationalSampler(7)


@pytest.fixture(scope="session")
def rep5() -> SpinRep:
    return build_rep(5)


@pytest.fixture(scope="session")
def rep6() -> SpinRep:
    return build_rep(6)


@pytest.fixture(scope="session")
def rep7() -> SpinRep:
    return build_rep(7)
