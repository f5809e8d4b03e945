import pytest
from hypothesis import strategies as st

from treelike.seq_ends import End


def ends(lo: int = -6, hi: int = 6):
    """Hypothesis strategy for ends with support inside [lo, hi]."""
    return st.frozensets(st.integers(lo, hi)).map(End.of)


E = End.parse


@pytest.fixture
def E_():
    return End.parse
