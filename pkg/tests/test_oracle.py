import itertools

import pytest
from hypothesis import given, settings, strategies as st

from newtonjumps.diagram import Diagram, deform, lies_below, nu_axes, triangle
from newtonjumps.oracle import OracleError, candidate_points, enumerate_attainable, verify_theorem

from conftest import coprime_pairs, counted_nu

ACCEPTANCE_PAIRS = [
    (2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (3, 7), (3, 8),
    (4, 5), (4, 7), (5, 6), (5, 7), (5, 8), (6, 7), (7, 8),
]


def hull_oracle(d, max_added=5):
    """Newton numbers of d deformed by every small subset of candidate points."""
    cands = candidate_points(d)
    values = set()
    for size in range(max_added + 1):
        for extra in itertools.combinations(cands, size):
            e = deform(d, extra)
            if e.touches_axes():
                values.add(nu_axes(e))
    return sorted((v for v in values if v >= 1), reverse=True)


def test_candidates_skip_smooth_points():
    cands = candidate_points(triangle(2, 3))
    assert (0, 0) not in cands and (1, 0) not in cands and (0, 1) not in cands
    assert set(cands) == {(0, 2), (1, 1)}


def test_candidates_need_axes():
    with pytest.raises(OracleError):
        candidate_points(Diagram(((1, 3), (3, 1))))


def test_cap_enforced():
    with pytest.raises(OracleError):
        enumerate_attainable(triangle(10, 11), cap=5)


def test_values_5_7():
    att = enumerate_attainable(triangle(5, 7))
    assert att.values == list(range(24, 14, -1)) + list(range(13, 0, -1))
    assert att.unit_prefix() == 9


@pytest.mark.parametrize("pq", [(2, 3), (3, 4), (3, 5), (2, 7), (4, 5), (5, 7), (3, 8)])
def test_matches_hull_oracle(pq):
    d = triangle(*pq)
    assert enumerate_attainable(d).values == hull_oracle(d)


@pytest.mark.parametrize("verts", [((0, 4), (1, 2), (3, 0)), ((0, 5), (1, 2), (4, 0)), ((0, 6), (2, 2), (3, 1), (5, 0))])
def test_matches_hull_oracle_on_bent_diagrams(verts):
    d = Diagram(verts)
    assert enumerate_attainable(d).values == hull_oracle(d, 4)


def test_witnesses_are_below_and_correct():
    d = triangle(5, 7)
    att = enumerate_attainable(d)
    for nu, w in att.witness.items():
        assert lies_below(w, d)
        assert nu_axes(w) == nu == counted_nu(w)


def test_floor_filters():
    att = enumerate_attainable(triangle(5, 7), floor=18)
    assert att.values == list(range(24, 17, -1))


@pytest.mark.parametrize("pq", ACCEPTANCE_PAIRS)
def test_verify_theorem(pq):
    rep = verify_theorem(*pq)
    assert rep["subset_ok"] and rep["unit_jumps_ok"]
    r = pq[1] % pq[0]
    assert rep["expected_unit_jumps"] == r * (pq[0] - r)


def test_verify_rejects_non_coprime():
    with pytest.raises(ValueError):
        verify_theorem(4, 6)


@settings(max_examples=30, deadline=None)
@given(coprime_pairs(max_q=14))
def test_procedure_values_inside_oracle(pq):
    rep = verify_theorem(*pq, floor=1, cap=200)
    assert set(rep["procedure_values"]) <= set(rep["oracle_values"])


def test_floor_above_origin():
    d = triangle(5, 7)
    assert enumerate_attainable(d, floor=24).values == [24]
    assert enumerate_attainable(d, floor=25).values == []


@settings(max_examples=30, deadline=None)
@given(coprime_pairs(max_q=9), st.integers(1, 40), st.integers(1, 40))
def test_lower_floor_gives_superset(pq, f1, f2):
    lo, hi = sorted((f1, f2))
    d = triangle(*pq)
    assert set(enumerate_attainable(d, hi, cap=100).values) <= set(enumerate_attainable(d, lo, cap=100).values)
