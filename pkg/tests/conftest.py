import mpmath
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _reset_mpmath():
    # tests compare at explicit workdps; keep the global context clean between them
    saved = mpmath.mp.dps
    yield
    mpmath.mp.dps = saved
