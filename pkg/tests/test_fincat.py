from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from finoperad import finseg
from finoperad.errors import BudgetExceeded, InvalidInput
from finoperad.fincat import completion, nerve, serialize
from finoperad.fincat.colimits import LeftKan, colimit
from finoperad.fincat.core import (
    FinCat,
    Functor,
    SetFunctor,
    constant_functor,
    discrete_category,
    identity_functor,
    poset_category,
    representable,
    terminal_category,
    with_terminal,
)
from finoperad.fincat.fibration import check_grothendieck_fibration
from finoperad.fincat.monoidal import FinMonoidalCat, check_cartesian_criterion, one_object_monoid
from finoperad.fincat.standard import build_standard, preimage_subset


# ---- standard categories


def test_finseg_hom_counts():
    C, _ = build_standard("finseg", 1)
    assert set(C.objects) == {0, 1}
    for m, n in itertools.product(range(2), repeat=2):
        assert len(C.hom(m, n)) == (n + 1) ** m


def test_catass_hom_2_1():
    C, _ = build_standard("catass", 2)
    # null map, two maps hitting 1 once, and the fold with either order
    assert len(C.hom(2, 1)) == 1 + 2 + 2


def test_triv_is_the_inert_maps():
    T, _ = build_standard("triv", 3)
    F, _ = build_standard("finseg", 3)
    assert set(T.morphisms()) == {f for f in F.morphisms() if finseg.is_inert(f)}


def test_standard_categories_validate():
    for name in ("finseg", "catass", "triv", "e0", "fintimes", "pointed", "delta"):
        C, _ = build_standard(name, 2)
        assert C.validate() == [], name


def test_unknown_standard_name():
    with pytest.raises(InvalidInput):
        build_standard("nope", 2)


# ---- fibrations


def test_identity_functor_is_fibration():
    C, _ = build_standard("finseg", 2)
    assert check_grothendieck_fibration(identity_functor(C)).fibration


def test_fintimes_lifts_are_preimages():
    _, p = build_standard("fintimes", 3)
    report = check_grothendieck_fibration(p)
    assert report.fibration and not report.missing
    for (n, S), f, found in report.lifts:
        assert {phi.source for phi in found} == {(f.m, preimage_subset(f, S))}


def test_triv_inclusion_is_not_fibration():
    _, q = build_standard("triv", 3)
    report = check_grothendieck_fibration(q)
    assert not report.fibration
    # the fold <2> -> <1> over the object <1> has an empty lift search
    fold = finseg.PointedMap(2, 1, (1, 1))
    assert (1, fold) in report.missing


# ---- colimits and Kan extensions


def test_constant_on_connected_base():
    C, _ = build_standard("finseg", 2)
    assert len(colimit(constant_functor(C, ["p"]))) == 1


def test_discrete_coproduct():
    D = discrete_category(["a", "b"])
    X = SetFunctor(D, {"a": [0, 1], "b": [0, 1, 2]}, lambda f: tuple(range(2 if f[1] == "a" else 3)))
    assert len(colimit(X)) == 5


def test_coequalizer_by_union_find():
    C = FinCat(["s", "t"], {("s", "t"): ["f", "g"], ("s", "s"): ["1s"], ("t", "t"): ["1t"]},
               {"s": "1s", "t": "1t"}, lambda g, f: g if f in ("1s", "1t") else f)
    # X(s) = {0, 1}, X(t) = {0, 1, 2, 3}; f = (0, 1), g = (1, 2)
    X = SetFunctor(C, {"s": [0, 1], "t": [0, 1, 2, 3]}, {"f": (0, 1), "g": (1, 2), "1s": (0, 1), "1t": (0, 1, 2, 3)})
    assert X.validate() == []
    # 0 ~ 1 ~ 2 in X(t), 3 alone: two classes
    col = colimit(X)
    assert len(col) == 2
    assert len(set(col.legs["t"][:3])) == 1 and col.legs["t"][3] != col.legs["t"][0]


def test_lan_along_identity():
    C = poset_category(range(3), lambda a, b: a <= b)
    X = representable(C, 1)
    lan = LeftKan(identity_functor(C), X)
    assert [lan.functor.size(b) for b in C.objects] == [X.size(b) for b in C.objects]
    assert lan.unit.is_isomorphism()


def test_lan_into_larger_discrete():
    A = terminal_category()
    B = discrete_category(["x", "y"])
    F = Functor(A, B, lambda a: "x", lambda f: ("id", "x"))
    X = constant_functor(A, ["p", "q"])
    lan = LeftKan(F, X)
    assert lan.functor.size("x") == 2 and lan.functor.size("y") == 0


def test_lan_of_representable_is_representable():
    # Lan_F Hom(a, -) = Hom(F a, -); checked on a surjective-on-objects functor
    A = poset_category(range(4), lambda a, b: a <= b)
    B = poset_category(range(2), lambda a, b: a <= b)
    F = Functor(A, B, lambda a: a // 2, lambda f: (f[0] // 2, f[1] // 2))
    assert F.validate() == []
    for a in A.objects:
        lan = LeftKan(F, representable(A, a))
        for b in B.objects:
            assert lan.functor.size(b) == len(B.hom(F.ob(a), b))


# ---- nerves


def test_terminal_object_contractible():
    C = with_terminal(discrete_category(range(3)))
    assert nerve.nerve_betti(C, 2).betti == (1, 0, 0)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_discrete_betti(k):
    assert nerve.nerve_betti(discrete_category(range(k)), 2).betti == (k, 0, 0)


def test_parallel_pair_is_a_circle():
    C = FinCat(["a", "b"], {("a", "b"): ["f", "g"], ("a", "a"): ["1a"], ("b", "b"): ["1b"]},
               {"a": "1a", "b": "1b"}, lambda g, f: g if f in ("1a", "1b") else f)
    assert nerve.nerve_betti(C, 2).betti == (1, 1, 0)


def test_cyclic_group_has_rational_homology_of_a_point():
    M = one_object_monoid(range(3), lambda a, b: (a + b) % 3, 0)
    assert nerve.nerve_betti(M.base, 2).betti == (1, 0, 0)


@st.composite
def random_posets(draw):
    n = draw(st.integers(1, 5))
    rel = {(a, b) for a in range(n) for b in range(a + 1, n) if draw(st.booleans())}
    closed = set(rel)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if (i, k) in closed and (k, j) in closed:
                    closed.add((i, j))
    return poset_category(range(n), lambda a, b: a == b or (a, b) in closed)


@settings(max_examples=40, deadline=None)
@given(random_posets())
def test_adjoining_terminal_gives_contractible(C):
    assert nerve.nerve_betti(with_terminal(C), 2).contractible_evidence


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 4))
def test_adjoining_terminal_to_cyclic_group(k):
    M = one_object_monoid(range(k), lambda a, b: (a + b) % k, 0)
    assert nerve.nerve_betti(with_terminal(M.base), 2).betti == (1, 0, 0)


def test_budget_exceeded():
    C, _ = build_standard("finseg", 2)
    with pytest.raises(BudgetExceeded):
        nerve.nerve_betti(C, 2, budget=5)


# ---- square completions


def test_small_completion_contractible():
    inst = completion.SquareInstance(1, 2, 1, (0,), (0,))
    assert completion.completion_betti(inst, 2).betti == (1, 0, 0)
    assert completion.check_image_coreflection(inst) == []


def test_completion_instances_round_trip():
    for inst in completion.instances(1, 2, 2):
        assert completion.SquareInstance.from_json(inst.to_json()) == inst


def test_completion_rejects_bad_alpha():
    with pytest.raises(InvalidInput):
        completion.SquareInstance(2, 2, 1, (1, 0), (0, 0))


# ---- Cartesian criterion


def test_meet_semilattice_is_cartesian():
    # subsets of {0, 1} under inclusion, tensor = intersection, unit = top
    els = [frozenset(s) for s in ([], [0], [1], [0, 1])]
    C = poset_category(els, lambda a, b: a <= b)
    M = FinMonoidalCat(C, lambda a, b: a & b, lambda f, g: (f[0] & g[0], f[1] & g[1]), frozenset([0, 1]))
    assert M.validate() == []
    result = check_cartesian_criterion(M, {a: (a, a) for a in els})
    assert result["passed"] and result["product_checked"]


def test_group_is_not_cartesian():
    M = one_object_monoid(range(2), lambda a, b: (a + b) % 2, 0)
    result = check_cartesian_criterion(M, {"*": 0})
    assert not result["passed"]
    assert result["witnesses"][0]["condition"] == "unit is terminal"


def test_terminal_category_is_cartesian():
    C = terminal_category()
    M = FinMonoidalCat(C, lambda a, b: "*", lambda f, g: ("id", "*"), "*")
    assert check_cartesian_criterion(M, {"*": ("id", "*")})["passed"]


def test_max_poset_fails_naturality_free_check():
    C = poset_category([0, 1], lambda a, b: a <= b)
    M = FinMonoidalCat(C, max, lambda f, g: (max(f[0], g[0]), max(f[1], g[1])), 0)
    assert not check_cartesian_criterion(M, {0: (0, 0), 1: (1, 1)})["passed"]


# ---- JSON


def test_category_json_round_trip():
    C = poset_category(range(3), lambda a, b: a <= b)
    data = serialize.fincat_to_json(C, label=lambda x: list(x) if isinstance(x, tuple) else x)
    D = serialize.fincat_from_json(data)
    assert D.objects == C.objects
    assert {f for f in D.morphisms()} == set(C.morphisms())


def test_category_json_missing_field():
    with pytest.raises(InvalidInput, match="homs"):
        serialize.fincat_from_json({"objects": [0], "identities": [[0, "i"]], "composition": []})
