import math

from hypothesis import strategies as st

from newtonjumps.diagram import lattice_count


@st.composite
def coprime_pairs(draw, max_q=200, min_p=2):
    q = draw(st.integers(min_value=min_p + 1, max_value=max_q))
    p = draw(st.integers(min_value=min_p, max_value=q - 1).filter(lambda p: math.gcd(p, q) == 1))
    return p, q


def counted_nu(d):
    """Newton number from a brute-force lattice count of the region under ``d``."""
    poly = [(0, 0)] + [tuple(v) for v in reversed(d.vertices)]
    if d.top.y == 0 or d.bottom.x == 0:
        return None
    boundary, interior = lattice_count(poly)
    twice_area = boundary + 2 * interior - 2
    return twice_area - d.bottom.x - d.top.y + 1
