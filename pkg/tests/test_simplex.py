from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from finoperad import finseg, simplex
from finoperad.errors import CompositionMismatch, InvalidInput
from finoperad.simplex import AssMorphism, SimplexMap


@st.composite
def simplex_maps(draw, max_dim=4, m=None, n=None):
    m = draw(st.integers(0, max_dim)) if m is None else m
    n = draw(st.integers(0, max_dim)) if n is None else n
    values = sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))
    return SimplexMap(m, n, tuple(values))


def gap_oracle(f):
    """Gap i of the target goes to gap j when f(j-1) < i <= f(j); read off by
    scanning each gap against every j."""
    out = []
    for i in range(1, f.n + 1):
        hits = [j for j in range(1, f.m + 1) if f.values[j - 1] < i <= f.values[j]]
        assert len(hits) <= 1
        out.append(hits[0] if hits else 0)
    return tuple(out)


def test_join_objects():
    assert simplex.join(0, 0) == 1
    assert simplex.join(2, 3) == 6


@pytest.mark.parametrize("m,n", [(0, 0), (1, 2), (3, 1)])
def test_join_identities(m, n):
    assert simplex.join(simplex.identity(m), simplex.identity(n)) == simplex.identity(m + n + 1)


def test_join_inclusions_cover():
    i, j = simplex.join_inclusions(1, 2)
    assert i.values + j.values == tuple(range(5))


def test_convexity_examples():
    assert simplex.is_convex(simplex.identity(3))
    assert simplex.is_convex(SimplexMap(1, 3, (1, 2)))
    assert not simplex.is_convex(SimplexMap(1, 2, (0, 2)))


@pytest.mark.parametrize("n", range(5))
def test_phi_identity(n):
    assert simplex.phi(simplex.identity(n)) == simplex.ass_identity(n)


def test_phi_of_outer_face():
    f = SimplexMap(1, 2, (0, 2))
    assert simplex.phi(f) == AssMorphism(finseg.PointedMap(2, 1, (1, 1)), ((1, 2),))
    assert finseg.is_active(simplex.phi(f).map)


def test_phi_of_vertex():
    assert simplex.phi(SimplexMap(0, 1, (0,))).map == finseg.PointedMap(1, 0, (0,))


@given(simplex_maps())
def test_phi_matches_gap_oracle(f):
    assert simplex.phi(f).map.values == gap_oracle(f)


def test_phi_functorial_bound_3():
    assert simplex.verify_phi_functorial(3) == []


def test_convex_maps_go_to_inert():
    assert simplex.verify_convex_inert(3) == []


def test_compose_ass_identity():
    for f in simplex.ass_maps(2, 2):
        assert simplex.compose_ass(simplex.ass_identity(2), f) == f
        assert simplex.compose_ass(f, simplex.ass_identity(2)) == f


def test_fold_after_fold_orders():
    # <4> -> <2> folding pairs, then <2> -> <1> with order (2, 1)
    f = AssMorphism(finseg.PointedMap(4, 2, (1, 1, 2, 2)), ((2, 1), (3, 4)))
    g = AssMorphism(finseg.PointedMap(2, 1, (1, 1)), ((2, 1),))
    gf = simplex.compose_ass(g, f)
    assert gf.orders == ((3, 4, 2, 1),)
    assert gf == simplex.lexicographic_oracle(g, f)


def test_compose_ass_matches_oracle_exhaustively():
    for a, b, c in itertools.product(range(3), repeat=3):
        for f in simplex.ass_maps(a, b):
            for g in simplex.ass_maps(b, c):
                assert simplex.compose_ass(g, f) == simplex.lexicographic_oracle(g, f)


def test_compose_ass_associative():
    fs = list(simplex.ass_maps(2, 2))
    for f, g, h in itertools.product(fs, repeat=3):
        left = simplex.compose_ass(h, simplex.compose_ass(g, f))
        right = simplex.compose_ass(simplex.compose_ass(h, g), f)
        assert left == right


def test_catass_hom_count():
    assert len(list(simplex.ass_maps(2, 1))) == 5


def test_middle_marking():
    assert simplex.middle_marking(1, 2) == finseg.PointedMap(1, 4, (2,))


def test_errors():
    with pytest.raises(InvalidInput):
        SimplexMap(1, 2, (2, 0))
    with pytest.raises(InvalidInput):
        AssMorphism(finseg.PointedMap(2, 1, (1, 1)), ((1,),))
    with pytest.raises(CompositionMismatch):
        simplex.compose(simplex.identity(1), simplex.identity(2))


def test_json_round_trips():
    f = SimplexMap(1, 3, (1, 3))
    assert simplex.from_json(simplex.to_json(f)) == f
    g = AssMorphism(finseg.PointedMap(2, 1, (1, 1)), ((2, 1),))
    assert simplex.ass_from_json(simplex.ass_to_json(g)) == g
