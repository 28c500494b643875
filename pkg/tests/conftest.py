import numpy as np
import pytest

from ptdirac import PotentialSpec


@pytest.fixture(scope="session")
def real_well():
    """Overcritical real square well (v1 = 0)."""
    return PotentialSpec(v0=3.0, v1=0.0, b=5.0)


@pytest.fixture(scope="session")
def weak_well():
    """Weak imaginary depth: real bound states persist."""
    return PotentialSpec(v0=3.0, v1=0.25, b=5.0)


@pytest.fixture(scope="session")
def strong_well():
    """Strong imaginary depth: no real bound states remain."""
    return PotentialSpec(v0=3.0, v1=0.5, b=5.0)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260809)
