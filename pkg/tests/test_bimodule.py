from __future__ import annotations

import itertools

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from finoperad import bimodule as bm
from finoperad import monoids
from finoperad.errors import CheckFailed, InvalidInput

ORDER2 = monoids.all_assoc_monoids(2)
ORDER3 = monoids.all_assoc_monoids(3)


def brute_bimodule_laws(b):
    """Units, both associativities and the interchange law, straight from the tables."""
    A, B = b.left, b.right
    X = range(len(b.elements))
    ok = all(b.left_action[A.unit][x] == x and b.right_action[x][B.unit] == x for x in X)
    ok &= all(
        b.left_action[A.table[a][a2]][x] == b.left_action[a][b.left_action[a2][x]]
        for a in range(len(A)) for a2 in range(len(A)) for x in X
    )
    ok &= all(
        b.right_action[x][B.table[c][c2]] == b.right_action[b.right_action[x][c]][c2]
        for c in range(len(B)) for c2 in range(len(B)) for x in X
    )
    ok &= all(
        b.right_action[b.left_action[a][x]][c] == b.left_action[a][b.right_action[x][c]]
        for a in range(len(A)) for c in range(len(B)) for x in X
    )
    return ok


def check(b, N=2):
    return bm.prebimodule_check(bm.bimodule_to_prebimodule(b, N))


@pytest.mark.parametrize("A,B", list(itertools.product(ORDER2, repeat=2)), ids=lambda M: M.name)
def test_order_two_pairs_pass(A, B):
    for b in (bm.trivial_action_bimodule(A, B, 2), bm.left_regular_bimodule(A, B), bm.right_regular_bimodule(A, B)):
        assert brute_bimodule_laws(b)
        report = check(b)
        assert bm.passed(report), {k: v[:1] for k, v in report.items() if v}


@settings(max_examples=8, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(ORDER3), st.sampled_from(ORDER3), st.integers(1, 3), st.integers(0, 100))
def test_random_order_three_bimodules_pass(A, B, size, seed):
    b = bm.random_bimodule(A, B, size, seed)
    if b is None:
        return
    assert brute_bimodule_laws(b) and b.validate() == []
    assert bm.passed(check(b))


def test_terminal_data_passes():
    T = monoids.trivial()
    b = bm.trivial_action_bimodule(T, T, 1)
    D = bm.bimodule_to_prebimodule(b, 2)
    assert all(D.M.sizes[k] == 1 for k in D.M.objects())
    assert bm.passed(bm.prebimodule_check(D))


def test_regular_bimodule_round_trip():
    A = monoids.cyclic_monoid(3)
    b = bm.regular_bimodule(A)
    D = bm.bimodule_to_prebimodule(b, 2)
    assert bm.passed(bm.prebimodule_check(D))
    assert bm.same_bimodule(b, bm.extract_bimodule(D))


@pytest.mark.parametrize("seed", range(4))
def test_perturbed_right_action_fails_convexity(seed):
    A, B = monoids.cyclic_group(2), monoids.semilattice2()
    D = bm.bimodule_to_prebimodule(bm.right_regular_bimodule(A, B), 2)
    P, location = bm.perturb_right(D, seed)
    report = bm.prebimodule_check(P)
    assert report["right convex"] or report["functoriality"]
    assert not bm.passed(report)
    with pytest.raises(CheckFailed):
        bm.extract_bimodule(P)


def test_perturb_needs_nontrivial_right_monoid():
    T = monoids.trivial()
    D = bm.bimodule_to_prebimodule(bm.trivial_action_bimodule(T, T, 2), 2)
    with pytest.raises(InvalidInput):
        bm.perturb_right(D)


def test_broken_laws_rejected_by_validate():
    A, B = monoids.cyclic_group(2), monoids.trivial()
    b = bm.Bimodule(A, B, ("p", "q"), ((0, 1), (0, 0)), ((0,), (1,)))
    assert not brute_bimodule_laws(b)
    assert any(w["law"] == "left associativity" for w in b.validate())


def test_json_round_trip():
    b = bm.left_regular_bimodule(monoids.cyclic_group(2), monoids.semilattice2())
    assert bm.same_bimodule(b, bm.Bimodule.from_json(b.to_json()))


def test_carrier_sizes_are_products():
    A, B = monoids.cyclic_monoid(3), monoids.cyclic_group(2)
    b = bm.trivial_action_bimodule(A, B, 2)
    D = bm.bimodule_to_prebimodule(b, 2)
    for m, n in D.M.objects():
        assert D.M.sizes[(m, n)] == 3**m * 2 * 2**n
        assert D.A.sizes[(m, n)] == 3**m
        assert D.B.sizes[(m, n)] == 2**n
