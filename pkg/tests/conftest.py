import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from besselwave.domains import build_circle_domain, build_torus_domain


@pytest.fixture(scope="session")
def circle4():
    return build_circle_domain(4)


@pytest.fixture(scope="session")
def circle8():
    return build_circle_domain(8)


@pytest.fixture(scope="session")
def torus2():
    return build_torus_domain(2, 2)


@pytest.fixture(scope="session")
def torus3():
    return build_torus_domain(3, 2)


@pytest.fixture()
def rng():
    return np.random.default_rng(np.random.Philox(42))
