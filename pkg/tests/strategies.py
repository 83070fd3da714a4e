"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from cffcover.setsystem import SetSystem


@st.composite
def set_systems(draw, max_points=6, min_t=2, max_t=6):
    n = draw(st.integers(1, max_points))
    t = draw(st.integers(min_t, max_t))
    blocks = [draw(st.frozensets(st.integers(1, n))) for _ in range(t)]
    return SetSystem(n, tuple(blocks))
