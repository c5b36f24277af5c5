import pytest

from clocklat import checks


@pytest.fixture(scope="session")
def corpus():
    """name -> (multiverse, framing) for every bundled instance."""
    return {name: (mv, fr) for name, mv, fr in checks.load_corpus()}


@pytest.fixture(scope="session")
def trefoil(corpus):
    return corpus["trefoil"][0]


@pytest.fixture(scope="session")
def torus(corpus):
    return corpus["torus_universe"][0]
