import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from duomap import DuoGraph, build_from_strings  # noqa: E402

SAMPLE_X = "xyzabcb"
SAMPLE_Y = "abbcxyz"
SAMPLE_EDGES = {(1, 5), (2, 6), (4, 1), (5, 3)}
# (2,2) clashes with both others; (1,3) and (3,1) can coexist
TRIGGER_EDGES = {(2, 2), (1, 3), (3, 1)}


@pytest.fixture
def sample():
    return build_from_strings(SAMPLE_X, SAMPLE_Y)


@pytest.fixture
def trigger():
    return DuoGraph(3, 3, TRIGGER_EDGES)


@st.composite
def small_graphs(draw, max_n=7, max_edges=12):
    n_a = draw(st.integers(1, max_n))
    n_b = draw(st.integers(1, max_n))
    cells = [(i, j) for i in range(1, n_a + 1) for j in range(1, n_b + 1)]
    edges = draw(st.lists(st.sampled_from(cells), max_size=max_edges, unique=True))
    return DuoGraph(n_a, n_b, edges)


@st.composite
def string_pairs(draw, max_len=12, max_sigma=3):
    sigma = draw(st.integers(1, max_sigma))
    x = draw(st.text(alphabet="abcd"[:sigma], min_size=1, max_size=max_len))
    y = "".join(draw(st.permutations(list(x))))
    return x, y
