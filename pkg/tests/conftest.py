import pytest

from mobius_bounds.arith import build_table


@pytest.fixture(scope="session")
def table_small():
    return build_table(10_000)


@pytest.fixture(scope="session")
def table_mid():
    return build_table(100_000)


@pytest.fixture(scope="session")
def table_big():
    return build_table(1_000_000)
