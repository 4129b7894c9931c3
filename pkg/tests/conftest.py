import pytest

from graphfock import fixtures


@pytest.fixture(scope="session")
def loop1():
    return fixtures.fixture_graph("loop1")


@pytest.fixture(scope="session")
def cuntz2():
    return fixtures.fixture_graph("cuntz2")


@pytest.fixture(scope="session")
def flag():
    return fixtures.fixture_graph("flag")


@pytest.fixture(scope="session")
def arrow():
    return fixtures.fixture_graph("arrow")


@pytest.fixture(scope="session")
def torus2():
    return fixtures.fixture_kgraph("torus2")


@pytest.fixture(scope="session")
def sq22():
    return fixtures.fixture_kgraph("sq22")


@pytest.fixture(scope="session")
def loop1k():
    return fixtures.fixture_kgraph("loop1k")
