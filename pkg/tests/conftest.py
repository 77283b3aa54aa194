import numpy as np
import pytest

from hypervlc.henon import HenonParams, HenonState
from hypervlc.smc_sync import SmcParams

MASTER_SEED = HenonState(0.1, -0.1, 0.1, 0.1)
SLAVE_SEED = HenonState(0.3, -0.1, 0.2, 0.1)


@pytest.fixture(scope="session")
def map_params():
    return HenonParams()


@pytest.fixture(scope="session")
def smc_params():
    return SmcParams()


@pytest.fixture(scope="session")
def test_image():
    """Deterministic 96x96 8-bit image with a strongly non-uniform histogram."""
    y, x = np.mgrid[0:96, 0:96]
    v = (110.0
         + 70.0 * np.exp(-((x - 30.0) ** 2 + (y - 40.0) ** 2) / 300.0)
         + 40.0 * np.sin(x / 6.0)
         + 0.3 * y)
    return np.clip(v, 0, 255).astype(np.uint8)
