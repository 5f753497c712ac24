from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from finoperad import finseg
from finoperad.errors import InvalidInput
from finoperad.finseg import PointedMap


def pm(m, n, *values):
    return PointedMap(m, n, tuple(values))


@st.composite
def pointed_maps(draw, max_arity=5, m=None, n=None):
    m = draw(st.integers(0, max_arity)) if m is None else m
    n = draw(st.integers(0, max_arity)) if n is None else n
    values = draw(st.lists(st.integers(0, n), min_size=m, max_size=m))
    return PointedMap(m, n, tuple(values))


# ---- oracles: written against the bare definitions, not the module


def oracle_compose(g, f):
    table = {0: 0}
    for i in range(1, f.m + 1):
        table[i] = 0 if f.values[i - 1] == 0 else g.values[f.values[i - 1] - 1]
    return tuple(table[i] for i in range(1, f.m + 1))


def oracle_pushout(f, g):
    """Quotient of <n> v <p> by f(i) ~ g(i), basepoints glued."""
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    nodes = [("B", j) for j in range(f.n + 1)] + [("C", k) for k in range(g.n + 1)]
    for x in nodes:
        find(x)
    parent[find(("C", 0))] = find(("B", 0))
    for i in range(1, f.m + 1):
        a, b = find(("B", f.values[i - 1])), find(("C", g.values[i - 1]))
        if a != b:
            parent[b] = a
    classes = {find(x) for x in nodes}
    return len(classes) - 1


# ---- composition and classification


def test_identity_composes_to_identity():
    assert finseg.compose(finseg.identity(3), finseg.identity(3)) == finseg.identity(3)


def test_collapse_after_swap():
    swap = pm(2, 2, 2, 1)
    rho1 = finseg.collapse(2, 1)
    assert finseg.compose(rho1, swap) == pm(2, 1, 0, 1)
    assert oracle_compose(rho1, swap) == (0, 1)


@given(pointed_maps(m=3, n=2), st.integers(0, 4))
def test_null_absorbs(f, k):
    z = finseg.null_map(k, 3)
    assert finseg.is_null(finseg.compose(f, z))


@given(pointed_maps(), st.data())
def test_compose_matches_oracle(f, data):
    g = data.draw(pointed_maps(n=None, m=f.n))
    assert finseg.compose(g, f).values == oracle_compose(g, f)


def test_classify_collapse():
    c = finseg.classify(pm(3, 1, 0, 1, 0))
    assert c.inert and c.semi_inert and not c.active and not c.null


@pytest.mark.parametrize("n", range(5))
def test_empty_source_is_everything(n):
    c = finseg.classify(PointedMap(0, n, ()))
    assert c.inert == (n == 0)
    assert c.active and c.null and c.semi_inert


def test_fold_is_active_not_semi_inert():
    c = finseg.classify(pm(2, 1, 1, 1))
    assert c.active and not c.semi_inert and not c.inert


@pytest.mark.parametrize("n", range(1, 7))
def test_collapses_are_inert(n):
    for i in range(1, n + 1):
        f = finseg.collapse(n, i)
        assert finseg.is_inert(f)
        # preimage oracle: exactly i maps to 1
        assert [v for v in f.values] == [1 if j == i else 0 for j in range(1, n + 1)]


def test_collapse_examples():
    assert finseg.collapse(1, 1) == finseg.identity(1)
    assert finseg.collapse(3, 2) == pm(3, 1, 0, 1, 0)


# ---- factorization


def brute_factorizations(f):
    """All (u, v) with u inert, v active, v.u = f, by search over every pair of maps."""
    out = []
    for k in range(f.m + 1):
        for u in finseg.all_maps(f.m, k):
            if sorted(v for v in u.values if v) != list(range(1, k + 1)):
                continue
            for v in finseg.all_maps(k, f.n):
                if all(v.values) and oracle_compose(v, u) == f.values:
                    out.append((u, v))
    return out


def test_factor_example():
    f = pm(3, 2, 2, 0, 2)
    u, v = finseg.factor_inert_active(f)
    assert u == pm(3, 2, 1, 0, 2)
    assert v == pm(2, 2, 2, 2)
    found = brute_factorizations(f)
    assert len(found) == 2 and all(u2.n == 2 for u2, _ in found)


@given(pointed_maps(max_arity=3))
def test_factorization_unique_up_to_permutation(f):
    u, v = finseg.factor_inert_active(f)
    assert finseg.is_inert(u) and finseg.is_active(v) and finseg.compose(v, u) == f
    found = brute_factorizations(f)
    k = u.n
    assert all(u2.n == k for u2, _ in found)
    assert len(found) == len(finseg.factorizations(f)) == __import__("math").factorial(k)


@given(pointed_maps())
def test_inert_and_active_factor_trivially(f):
    if finseg.is_inert(f):
        assert finseg.factor_inert_active(f) == (f, finseg.identity(f.n))
    elif finseg.is_active(f):
        assert finseg.factor_inert_active(f) == (finseg.identity(f.m), f)


# ---- smash


def test_smash_objects():
    assert finseg.smash_objects(2, 3) == 6


@given(st.integers(0, 4), st.integers(0, 4))
def test_smash_identities(m, n):
    assert finseg.smash(finseg.identity(m), finseg.identity(n)) == finseg.identity(m * n)


def test_smash_of_collapses():
    rho = finseg.collapse(2, 1)
    assert finseg.smash(rho, rho) == pm(4, 1, 1, 0, 0, 0)


@given(pointed_maps(max_arity=3), pointed_maps(max_arity=3))
def test_smash_matches_pairwise_formula(f, g):
    h = finseg.smash(f, g)
    for a, b in itertools.product(range(1, f.m + 1), range(1, g.m + 1)):
        fa, gb = f(a), g(b)
        want = 0 if 0 in (fa, gb) else (fa - 1) * g.n + gb
        assert h((a - 1) * g.m + b) == want


def test_smash_laws_small_bound():
    assert finseg.verify_smash_laws(2) == []


# ---- pushouts and splittings


def test_pushout_identities():
    n, i1, i2 = finseg.pushout(finseg.identity(2), finseg.identity(2))
    assert (n, i1, i2) == (2, finseg.identity(2), finseg.identity(2))


def test_pushout_collapsing_a_point():
    n, i1, i2 = finseg.pushout(pm(1, 0, 0), finseg.identity(1))
    assert n == 0 and i1 == PointedMap(0, 0, ()) and i2 == pm(1, 0, 0)


def test_pushout_of_two_collapses():
    f, g = finseg.collapse(2, 1), finseg.collapse(2, 2)
    n, i1, i2 = finseg.pushout(f, g)
    assert n == 0 == oracle_pushout(f, g)
    assert finseg.is_null(i1) and finseg.is_null(i2)


@given(pointed_maps(max_arity=3), st.data())
def test_pushout_size_matches_union_find(f, data):
    g = data.draw(pointed_maps(max_arity=3, m=f.m))
    n, i1, i2 = finseg.pushout(f, g)
    assert n == oracle_pushout(f, g)
    assert finseg.compose(i1, f) == finseg.compose(i2, g)


def test_pushout_semi_inert_small():
    witnesses, squares = finseg.verify_pushout_semi_inert(3)
    assert witnesses == [] and squares > 0


@pytest.mark.parametrize("n", range(4))
def test_split_complement_trivial_cases(n):
    assert finseg.split_complement(finseg.identity(n)).beta == finseg.null_map(n, 0)
    assert finseg.split_complement(finseg.null_map(n, 0)).beta == finseg.identity(n)


def test_split_complement_example():
    s = finseg.split_complement(pm(3, 1, 0, 1, 0))
    assert s.beta == pm(3, 2, 1, 0, 2)
    assert finseg.complements(pm(3, 1, 0, 1, 0)) == [pm(3, 2, 1, 0, 2), pm(3, 2, 2, 0, 1)]


def test_split_complement_rejects_non_inert():
    with pytest.raises(InvalidInput):
        finseg.split_complement(pm(2, 1, 1, 1))


# ---- JSON and vectorized tables


def test_json_round_trip_and_errors():
    f = pm(3, 2, 2, 0, 2)
    assert finseg.from_json(finseg.to_json(f)) == f
    with pytest.raises(InvalidInput, match="'n'"):
        finseg.from_json({"m": 1, "values": [0]})
    with pytest.raises(InvalidInput):
        finseg.from_json({"m": 1, "n": 1, "values": [2]})


def test_composition_index_agrees_with_compose():
    m, n, p = 2, 2, 3
    idx = finseg.composition_index(m, n, p)
    F = list(finseg.all_maps(m, n))
    G = list(finseg.all_maps(n, p))
    H = list(finseg.all_maps(m, p))
    for a, f in enumerate(F):
        for b, g in enumerate(G):
            assert H[int(idx[b, a])] == finseg.compose(g, f)
