from functools import lru_cache

import pytest

from greenpoly.lusztigshoji import solve
from greenpoly.springer import table_typeA, table_typeC


@lru_cache(maxsize=None)
def solved(ambient: str, n: int):
    if ambient == "A":
        return solve(table_typeA(n))
    return solve(table_typeC(n))


@pytest.fixture(scope="session")
def tableau():
    return solved
