import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from arrowlab import cube  # noqa: E402
from arrowlab.cube import BooleanFunction  # noqa: E402
from arrowlab.social import Gswf  # noqa: E402


@st.composite
def boolean_functions(draw, min_n=1, max_n=6, n=None):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))
    return BooleanFunction(n, np.array(bits, dtype=np.uint8))


@st.composite
def function_pairs(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    return draw(boolean_functions(n=n)), draw(boolean_functions(n=n))


@st.composite
def gswfs(draw, min_n=1, max_n=3):
    n = draw(st.integers(min_n, max_n))
    return Gswf.three(*(draw(boolean_functions(n=n)) for _ in range(3)))


def table_dict(F):
    """Plain-tuple view of a GSWF for the brute-force oracles."""
    return {key: tuple(int(b) for b in fn.table) for key, fn in F.pairs.items()}


@pytest.fixture(autouse=True)
def _reset_cap():
    cube.set_cap(None)
    yield
    cube.set_cap(None)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.LINES, key=lambda l: int(l.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
