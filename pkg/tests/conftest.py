import pytest

from slgen import ff


@pytest.fixture(scope="session")
def f2():
    return ff.make_field(2)


@pytest.fixture(scope="session")
def f3():
    return ff.make_field(3)


@pytest.fixture(scope="session")
def f5():
    return ff.make_field(5)


@pytest.fixture(scope="session")
def f4():
    return ff.make_field(2, 2)


@pytest.fixture(scope="session")
def f9():
    return ff.make_field(3, 2)
