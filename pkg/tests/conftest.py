import pytest
from hypothesis import settings

from multitwist import corpus

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def torus():
    return corpus.load("torus")


@pytest.fixture(scope="session")
def genus2():
    return corpus.load("genus2")


@pytest.fixture(scope="session")
def figure1():
    return corpus.load("figure1")


@pytest.fixture(scope="session")
def example23():
    return corpus.load("example23")
