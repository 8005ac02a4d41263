import pytest

from magraph import builtin_example


@pytest.fixture(scope="session")
def mag_t():
    return builtin_example("T")


@pytest.fixture(scope="session")
def mag_r():
    return builtin_example("R")
