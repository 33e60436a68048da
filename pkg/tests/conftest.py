import pytest
from hypothesis import strategies as st

from heckeroot.gaussint import GaussInt


def gauss_ints(bound=10**6, nonzero=True):
    s = st.builds(GaussInt, st.integers(-bound, bound), st.integers(-bound, bound))
    return s.filter(bool) if nonzero else s


@pytest.fixture
def G():
    return GaussInt
