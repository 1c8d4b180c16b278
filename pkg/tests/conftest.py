import pytest

from primeineq import build_table


@pytest.fixture(scope="session")
def table():
    """Shared sieve up to 10^6; building it takes ~20 ms."""
    return build_table(10 ** 6)


@pytest.fixture(scope="session")
def small_table():
    return build_table(10 ** 4)
