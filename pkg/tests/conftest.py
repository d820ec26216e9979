import numpy as np
import pytest

from semiwilson.corpus import builtin_corpus

OMEGA = np.exp(2j * np.pi / 3)


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus()


@pytest.fixture(scope="session")
def entries(corpus):
    return {e.id: e for e in corpus}
