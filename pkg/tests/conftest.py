from pathlib import Path

import pytest

from aben.pairing import GroupParams, SecurityLevel, generate_params, toy_params
from aben.utils.rng import ChaChaRandom


@pytest.fixture
def toy() -> GroupParams:
    return toy_params()


@pytest.fixture(scope="session")
def params80() -> GroupParams:
    return generate_params(SecurityLevel.L80, ChaChaRandom("aben-tests:80"))


@pytest.fixture(scope="session")
def params112() -> GroupParams:
    return generate_params(SecurityLevel.L112, ChaChaRandom("aben-tests:112"))


@pytest.fixture(scope="session")
def params128() -> GroupParams:
    return generate_params(SecurityLevel.L128, ChaChaRandom("aben-tests:128"))


@pytest.fixture
def rng() -> ChaChaRandom:
    return ChaChaRandom("aben-tests")


@pytest.fixture
def fixtures_dir() -> Path:
    return Path(__file__).parent / "fixtures"


@pytest.fixture(
    scope="module",
    params=[
        "params80",
        pytest.param("params112", marks=pytest.mark.slow),
        pytest.param("params128", marks=pytest.mark.slow),
    ],
)
def leveled(request) -> tuple[str, GroupParams]:
    """(fixture name, parameters) for each security level; 112 and 128 are slow."""
    return request.param, request.getfixturevalue(request.param)
