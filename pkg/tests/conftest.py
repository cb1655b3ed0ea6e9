import pytest

from classfusion.data import load_table


@pytest.fixture(scope="session")
def monster():
    return load_table("M")


@pytest.fixture(scope="session")
def table():
    return load_table
