import hypothesis.strategies as st
from hypothesis import settings

from forbconf.matrix import RMatrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def matrices(draw, max_rows=3, max_cols=4, alphabet=None, min_rows=1, min_cols=1):
    r = alphabet if alphabet is not None else draw(st.integers(2, 3))
    m = draw(st.integers(min_rows, max_rows))
    n = draw(st.integers(min_cols, max_cols))
    cols = draw(st.lists(st.tuples(*[st.integers(0, r - 1)] * m), min_size=n, max_size=n))
    return RMatrix(m, r, tuple(sorted(cols)))


@st.composite
def simple_matrices(draw, max_rows=3, max_cols=4, alphabet=2):
    m = draw(st.integers(1, max_rows))
    universe = [tuple((x >> i) & 1 for i in range(m)) for x in range(2 ** m)] if alphabet == 2 else None
    if universe is None:
        from itertools import product
        universe = list(product(range(alphabet), repeat=m))
    cols = draw(st.lists(st.sampled_from(universe), min_size=1, max_size=max_cols, unique=True))
    return RMatrix(m, alphabet, tuple(sorted(cols)))
