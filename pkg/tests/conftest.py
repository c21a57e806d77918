import numpy as np
import pytest

from partsentropy.groups import construct_finite_group


@pytest.fixture(scope="session")
def octahedral():
    return construct_finite_group("octahedral")


@pytest.fixture(scope="session")
def icosahedral():
    return construct_finite_group("icosahedral")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
