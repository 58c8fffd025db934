import pytest

from primesums.partitions import partition_table, strict_partition_table
from primesums.primes import PrimeStream


@pytest.fixture(scope="session")
def stream():
    """One shared sieve for the whole session; grows lazily as tests demand."""
    return PrimeStream()


@pytest.fixture(scope="session")
def tables_2k():
    return partition_table(2002), strict_partition_table(2002)
