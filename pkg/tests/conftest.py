import numpy as np
import pytest

from qsiegel import standard_model


MODEL_KINDS = [("rank1", None), ("diagonal", 2), ("sym_real", 2), ("herm_complex", 2)]


@pytest.fixture(scope="session")
def models():
    return {kind: standard_model(kind, param) for kind, param in MODEL_KINDS}


@pytest.fixture(scope="session")
def rank1(models):
    return models["rank1"]


@pytest.fixture(scope="session")
def diag2(models):
    return models["diagonal"]


@pytest.fixture(scope="session")
def sym2(models):
    return models["sym_real"]


@pytest.fixture(scope="session")
def herm2(models):
    return models["herm_complex"]


def random_elements(alg, count, seed=0, scale=1.0):
    rng = np.random.default_rng(seed)
    return [scale * rng.standard_normal(alg.dim) for _ in range(count)]
