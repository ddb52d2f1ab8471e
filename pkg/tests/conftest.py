import pytest

from oqwc.datasets import load_prepared


@pytest.fixture(scope="session")
def iris_prepared():
    return load_prepared()
