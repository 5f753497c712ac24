from __future__ import annotations

import math

import pytest

from finoperad import finseg, operad
from finoperad.errors import InvalidInput
from finoperad.fincat.fibration import check_grothendieck_fibration, full_image
from finoperad.fincat.core import Functor
from finoperad.operad import ColoredOperad


def unary_group_operad(unit):
    """One color, Mul(1) = Z/2 = {id, t}, no other operations."""
    table = {("id", "id"): "id", ("id", "t"): "t", ("t", "id"): "t", ("t", "t"): "id"}

    def mul(ins, out):
        return ("id", "t") if len(ins) == 1 else ()

    def compose(fmap, inputs, mids, output, inner, outer):
        if not inputs:
            return outer
        return table[(inner[0], outer)] if len(mids) == 1 else outer

    return ColoredOperad("z2", ["c"], mul, {"c": unit}, compose)


def test_terminal_operad_passes():
    assert operad.check_axioms(operad.builtin("comm"), 3) == []


def test_ass_passes_at_bound_3():
    assert operad.check_axioms(operad.builtin("ass"), 3) == []


@pytest.mark.parametrize("name", ["triv", "e0"])
def test_other_builtins_pass(name):
    assert operad.check_axioms(operad.builtin(name), 3) == []


def test_corrupted_unit_is_located():
    assert operad.check_axioms(unary_group_operad("id"), 2) == []
    witnesses = operad.check_axioms(unary_group_operad("t"), 2)
    assert witnesses and all("law" in w for w in witnesses)
    assert any("unit" in w["law"] for w in witnesses)


def test_mul_sizes():
    ass, e0, comm = operad.builtin("ass"), operad.builtin("e0"), operad.builtin("comm")
    assert len(ass.mul(("c",) * 3, "c")) == math.factorial(3)
    assert len(e0.mul(("c",) * 2, "c")) == 0
    for n in range(7):
        assert len(comm.mul(("c",) * n, "c")) == 1


def test_unknown_builtin():
    with pytest.raises(InvalidInput):
        operad.builtin("lie")


def test_json_round_trip_ass():
    data = operad.to_json(operad.builtin("ass"), 2)
    O = operad.from_json(data)
    assert operad.check_axioms(O, 2) == []
    assert len(O.mul(("c", "c"), "c")) == 2


def test_from_json_builtin_shortcut():
    assert operad.from_json({"builtin": "triv"}).name == "triv"


def test_from_json_missing_field():
    with pytest.raises(InvalidInput, match="units"):
        operad.from_json({"colors": ["c"], "mul": []})


@pytest.mark.parametrize("kind", ["comm", "ass", "triv", "e0"])
@pytest.mark.parametrize("L", [0, 1, 2])
def test_operad_category_matches_standard(kind, L):
    assert operad.check_standard_isomorphism(kind, L) == []


def test_ass_hom_2_1():
    OC = operad.operad_category(operad.builtin("ass"), 2)
    assert len(OC.underlying.hom(("c", "c"), ("c",))) == 5


def test_comm_flags_match_finseg():
    OC = operad.operad_category(operad.builtin("comm"), 3)
    for m in OC.underlying.morphisms():
        flags = operad.classify_operadic(OC, m)
        base = finseg.classify(m.data[0])
        assert (flags.inert, flags.semi_inert, flags.null) == (base.inert, base.semi_inert, base.null)


def test_ass_identity_orders_over_inert_are_inert():
    OC = operad.operad_category(operad.builtin("ass"), 3)
    for m in OC.underlying.morphisms():
        alpha, ops = m.data
        if finseg.is_inert(alpha):
            assert operad.classify_operadic(OC, m).inert
        assert operad.classify_operadic(OC, m).semi_inert == operad.semi_inert_by_definition(OC, m)


def test_identities_are_inert():
    for kind in ("comm", "ass", "triv", "e0"):
        OC = operad.operad_category(operad.builtin(kind), 2)
        for a in OC.underlying.objects:
            assert operad.classify_operadic(OC, OC.underlying.identity(a)).inert


def test_arrow_categories_comm_L1():
    OC = operad.operad_category(operad.builtin("comm"), 1)
    K, K0 = operad.arrow_categories(OC)
    maps = {f.data[0] for f in K.underlying.objects}
    assert len(maps) == len(K.underlying.objects) == 5
    assert all(finseg.is_semi_inert(f) for f in maps)
    null_maps = {f.data[0] for f in K0.underlying.objects}
    assert finseg.PointedMap(1, 0, (0,)) in null_maps
    assert finseg.identity(1) not in null_maps


@pytest.mark.parametrize("L", [1, 2])
def test_source_projection_on_null_arrows_is_fibration(L):
    OC = operad.operad_category(operad.builtin("comm"), L)
    _, K0 = operad.arrow_categories(OC)
    image = full_image(K0.e0, name="image")
    p = Functor(K0.underlying, image, K0.e0.ob, K0.e0, name="e0")
    assert p.validate() == []
    assert check_grothendieck_fibration(p).fibration
