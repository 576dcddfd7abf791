import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from micropolar.elasticity import CosseratMaterial

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

finite = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False, allow_infinity=False)
tensors = arrays(np.float64, (3, 3), elements=finite)
vectors = arrays(np.float64, (3,), elements=finite)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def mat():
    """Reference moduli: l1 = 0.141, l2 = 0.173, l3 = 0.108."""
    return CosseratMaterial(K=2000.0, G=1000.0, Gc=500.0, T=10.0, B=20.0, Bc=30.0)
