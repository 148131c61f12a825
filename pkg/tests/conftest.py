import pytest

import qba


@pytest.fixture(scope="session")
def fx():
    return qba.all_fixtures()


@pytest.fixture(scope="session")
def congruence_cache():
    cache = {}

    def get(algebra):
        key = (algebra.names, algebra.join, algebra.meet, algebra.star,
               algebra.zero, algebra.one)
        if key not in cache:
            cache[key] = qba.all_congruences(algebra)
        return cache[key]

    return get
