import pytest

from cdlattice import builtin_corpus, order16_catalog


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus(128)


@pytest.fixture(scope="session")
def small_corpus(corpus):
    return [(label, g) for label, g in corpus if g.order <= 64]


@pytest.fixture(scope="session")
def catalog16():
    return order16_catalog()
