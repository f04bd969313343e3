import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "fast",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fast")


@pytest.fixture
def cfg16():
    from k3walls import K3Config

    return K3Config(16)


@pytest.fixture
def v213():
    from k3walls import MukaiVector

    return MukaiVector(2, 1, 3)
