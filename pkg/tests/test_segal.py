from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finoperad import finseg, monoids, segal
from finoperad.errors import CheckFailed, InvalidInput
from finoperad.finseg import PointedMap
from finoperad.simplex import SimplexMap

SMALL = monoids.all_comm_monoids(3)
SMALL_ASSOC = monoids.all_assoc_monoids(3)


def brute_is_comm_monoid(table, unit):
    k = len(table)
    r = range(k)
    return (
        all(table[unit][a] == a == table[a][unit] for a in r)
        and all(table[a][b] == table[b][a] for a in r for b in r)
        and all(table[table[a][b]][c] == table[a][table[b][c]] for a in r for b in r for c in r)
    )


def test_enumerated_monoids_are_monoids():
    for A in SMALL:
        assert brute_is_comm_monoid(A.table, A.unit)


def test_number_of_small_comm_monoids():
    # isomorphism classes of commutative monoids of orders 1, 2, 3
    assert [len(monoids.enumerate_comm_monoids(k)) for k in (1, 2, 3)] == [1, 2, 5]


# ---- Gamma-sets


@pytest.mark.parametrize("A", SMALL, ids=lambda A: A.name)
def test_monoid_gamma_passes(A):
    M = segal.comm_monoid_to_gamma(A, 3)
    assert M.validate() == []
    assert segal.check_gamma_segal(M) == []


def test_constant_two_point_functor_fails():
    M = segal.constant_gamma(["a", "b"], 3)
    ns = [w["n"] for w in segal.check_gamma_segal(M)]
    assert ns[:2] == [0, 2]


@pytest.mark.parametrize("seed", range(5))
def test_perturbation_is_located(seed):
    M = segal.comm_monoid_to_gamma(monoids.cyclic_group(2), 3)
    bad, (m, n, f, x) = segal.perturb(M, seed)
    h = PointedMap(m, n, finseg.hom_array(m, n)[f])
    witnesses = bad.validate()
    assert witnesses
    for w in witnesses:
        assert w["law"] == "composition"
        wf, wg = finseg.from_json(w["f"]), finseg.from_json(w["g"])
        assert h in (wf, wg, finseg.compose(wg, wf))


def test_semilattice_round_trip():
    A = monoids.semilattice2()
    B = segal.gamma_to_comm_monoid(segal.comm_monoid_to_gamma(A, 3))
    assert (B.elements, B.table, B.unit) == (A.elements, A.table, A.unit)


def test_cyclic_group_round_trip():
    B = segal.gamma_to_comm_monoid(segal.comm_monoid_to_gamma(monoids.cyclic_group(2), 3))
    assert len(B) == 2
    assert B.table == ((0, 1), (1, 0)) and B.unit == 0


def test_trivial_monoid():
    M = segal.comm_monoid_to_gamma(monoids.trivial(), 4)
    assert all(M.size(n) == 1 for n in range(5))
    B = segal.gamma_to_comm_monoid(M)
    assert len(B) == 1


@pytest.mark.parametrize("A", SMALL, ids=lambda A: A.name)
def test_carrier_sizes(A):
    M = segal.comm_monoid_to_gamma(A, 4)
    assert [M.size(n) for n in range(5)] == [len(A) ** n for n in range(5)]


@pytest.mark.parametrize("A", SMALL, ids=lambda A: A.name)
def test_round_trip_on_the_nose(A):
    B = segal.gamma_to_comm_monoid(segal.comm_monoid_to_gamma(A, 4))
    assert (B.elements, B.table, B.unit) == (A.elements, A.table, A.unit)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 10_000))
def test_relabeled_copy_compares_isomorphically(A, seed):
    R = segal.random_relabeling(segal.comm_monoid_to_gamma(A, 3), seed)
    assert R.validate() == [] and segal.check_gamma_segal(R) == []
    assert segal.segal_comparison(R) == []
    assert monoids.isomorphic(segal.gamma_to_comm_monoid(R), A)


def test_normalized_search_order_2():
    survivors, tried = segal.normalized_segal_search(2, N=3)
    assert tried == 2 * 2**4
    found = [monoids.CommMonoid((0, 1), tuple(map(tuple, t)), u) for t, u in survivors]
    # survivors are exactly the commutative monoid tables on {0, 1}
    brute = [
        (t, u)
        for u in range(2)
        for flat in itertools.product(range(2), repeat=4)
        for t in [(flat[:2], flat[2:])]
        if brute_is_comm_monoid(t, u)
    ]
    assert sorted((A.table, A.unit) for A in found) == sorted(brute)


def test_gamma_json_round_trip():
    M = segal.comm_monoid_to_gamma(monoids.cyclic_group(2), 3)
    N = segal.GammaSet.from_json(M.to_json())
    assert N.to_json() == M.to_json()
    assert [len(N.carriers[n]) for n in range(4)] == [1, 2, 4, 8]
    assert all(np.array_equal(N.actions[k], M.actions[k]) for k in M.actions)


def test_extraction_requires_truncation_3():
    M = segal.comm_monoid_to_gamma(monoids.cyclic_group(2), 2)
    with pytest.raises(InvalidInput):
        segal.gamma_to_comm_monoid(M)


def test_extraction_rejects_non_segal():
    with pytest.raises(CheckFailed):
        segal.gamma_to_comm_monoid(segal.constant_gamma(["a", "b"], 3))


# ---- simplicial side


def test_trivial_nerve():
    r = segal.simplicial_monoid_roundtrip(monoids.trivial(), N=3)
    assert r["passed"]
    X = segal.nerve_of_monoid(monoids.trivial(), 3)
    assert all(X.size(n) == 1 for n in range(4))


def test_idempotent_monoid_round_trip():
    A = monoids.semilattice2()
    r = segal.simplicial_monoid_roundtrip(A, N=3)
    assert r["passed"]
    B = segal.extract_monoid(segal.nerve_of_monoid(A, 3))
    assert B.table == A.table


def test_symmetric_difference_face_is_multiplication():
    A = monoids.cyclic_group(2)
    X = segal.nerve_of_monoid(A, 3)
    d1 = X.act(SimplexMap(1, 2, (0, 2)))
    for a, b in itertools.product(range(2), repeat=2):
        assert d1[a * 2 + b] == a ^ b
    assert segal.simplicial_monoid_roundtrip(A, N=3)["passed"]


@pytest.mark.parametrize("A", SMALL_ASSOC, ids=lambda A: A.name)
def test_associative_round_trip(A):
    r = segal.simplicial_monoid_roundtrip(A, N=3)
    assert r["passed"], {k: v[:1] for k, v in r["checks"].items() if v}


def test_noncommutative_monoid_extracted_exactly():
    A = monoids.left_zero_monoid()
    assert not A.is_commutative()
    B = segal.extract_monoid(segal.nerve_of_monoid(A, 3))
    assert B.table == A.table


def test_broken_nerve_fails_validation():
    X = segal.nerve_of_monoid(monoids.cyclic_group(2), 3)
    f = SimplexMap(1, 2, (0, 2))
    X.actions[f] = 1 - X.actions[f]
    assert any(w["law"] == "composition" for w in X.validate())


def test_gamma_act_uses_value_index():
    M = segal.comm_monoid_to_gamma(monoids.cyclic_group(2), 3)
    fold = M.act(PointedMap(2, 1, (1, 1)))
    assert list(fold) == [0, 1, 1, 0]
