import mpmath
import pytest
from hypothesis import settings

from cnct import PrecisionContext

settings.register_profile("cnct", deadline=None, max_examples=25, derandomize=True)
settings.load_profile("cnct")


def rel(a, b):
    """Relative difference |a - b| / |b| evaluated in mpmath."""
    a, b = mpmath.mpf(a), mpmath.mpf(b)
    return abs(a - b) / abs(b) if b != 0 else abs(a)


@pytest.fixture
def ctx13():
    return PrecisionContext(acc=13)


@pytest.fixture
def ctx30():
    return PrecisionContext(acc=30, working_digits=40)
