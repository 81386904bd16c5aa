import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from tzcodes.gf2m import get_field

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def clmul_mod(a, b, modulus: int, m: int) -> np.ndarray:
    """Shift-and-add product mod ``modulus``; no tables, used as an oracle."""
    a = np.asarray(a, dtype=np.int64).copy()
    b = np.asarray(b, dtype=np.int64) + np.zeros_like(a)
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    for _ in range(m):
        out ^= np.where(b & 1, a, 0)
        b = b >> 1
        a = a << 1
        a = np.where(a >> m & 1, a ^ modulus, a)
    return out


@pytest.fixture(scope="session")
def f5():
    return get_field(5)


@pytest.fixture(scope="session")
def f7():
    return get_field(7)
