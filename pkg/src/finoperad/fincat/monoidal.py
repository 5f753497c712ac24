"""Strict monoidal structures on finite categories and the diagonal criterion for Cartesian ones."""
from __future__ import annotations

import itertools
from typing import Callable

from ..errors import IncompleteData, InvalidInput
from .core import FinCat, Functor, product_category


class FinMonoidalCat:
    """A finite category with a strictly associative, strictly unital tensor product.

    ``tensor_obj(a, b)`` and ``tensor_mor(f, g)`` give the tensor on objects
    and morphisms. ``braiding(a, b)``, if given, is a morphism a(x)b -> b(x)a.
    """

    def __init__(
        self,
        base: FinCat,
        tensor_obj: Callable,
        tensor_mor: Callable,
        unit,
        braiding: Callable | None = None,
        name: str = "",
    ):
        self.base = base
        self.tensor_obj = tensor_obj
        self.tensor_mor = tensor_mor
        self.unit = unit
        self._braiding = braiding
        self.name = name or base.name

    def braiding(self, a, b):
        if self._braiding is not None:
            return self._braiding(a, b)
        hs = self.base.hom(self.tensor_obj(a, b), self.tensor_obj(b, a))
        if len(hs) == 1:
            return hs[0]
        raise IncompleteData(f"no braiding supplied for ({a!r}, {b!r}) and the hom-set is not a singleton")

    def tensor_functor(self) -> Functor:
        C = self.base
        CxC = product_category(C, C)
        return Functor(
            CxC, C, lambda ab: self.tensor_obj(*ab), lambda fg: self.tensor_mor(*fg), name="tensor"
        )

    def validate(self) -> list[dict]:
        C = self.base
        witnesses = []
        if self.unit not in C.objects:
            return [{"law": "unit object", "unit": repr(self.unit)}]
        for a, b in itertools.product(C.objects, repeat=2):
            if self.tensor_obj(a, b) not in C._object_set:
                witnesses.append({"law": "tensor of objects", "objects": [repr(a), repr(b)]})
        if witnesses:
            return witnesses
        for a in C.objects:
            if self.tensor_obj(self.unit, a) != a or self.tensor_obj(a, self.unit) != a:
                witnesses.append({"law": "strict unit on objects", "object": repr(a)})
        for a, b, c in itertools.product(C.objects, repeat=3):
            t = self.tensor_obj
            if t(t(a, b), c) != t(a, t(b, c)):
                witnesses.append({"law": "strict associativity on objects", "objects": [repr(a), repr(b), repr(c)]})
        witnesses.extend(self.tensor_functor().validate())
        idI = C.identity(self.unit)
        morphisms = list(C.morphisms())
        for f in morphisms:
            if self.tensor_mor(idI, f) != f or self.tensor_mor(f, idI) != f:
                witnesses.append({"law": "strict unit on morphisms", "morphism": repr(f)})
        for f, g, h in itertools.product(morphisms, repeat=3):
            tm = self.tensor_mor
            if tm(tm(f, g), h) != tm(f, tm(g, h)):
                witnesses.append({"law": "strict associativity on morphisms", "morphisms": [repr(f), repr(g), repr(h)]})
                break
        return witnesses


def terminal_maps(M: FinMonoidalCat) -> tuple[dict, list[dict]]:
    """The unique map from each object to the unit, and witnesses if the unit is not terminal."""
    C = M.base
    maps, witnesses = {}, []
    for a in C.objects:
        hs = C.hom(a, M.unit)
        if len(hs) != 1:
            witnesses.append({"condition": "unit is terminal", "object": repr(a), "maps": len(hs)})
        else:
            maps[a] = hs[0]
    return maps, witnesses


def check_cartesian_criterion(M: FinMonoidalCat, diagonals: dict) -> dict:
    """Diagonal criterion for a symmetric monoidal structure to be Cartesian.

    Checks that the unit is terminal and that the diagonals satisfy the counit
    counit law, naturality and compatibility with the tensor. When all
    hold, also checks by enumeration that a(x)b with its two projections is a
    product. Returns a report with ``passed`` and ``witnesses``.
    """
    C = M.base
    for a in C.objects:
        if a not in diagonals:
            raise IncompleteData(f"missing diagonal for object {a!r}")
        d = diagonals[a]
        if not C.has_morphism(d) or C.source(d) != a or C.target(d) != M.tensor_obj(a, a):
            raise InvalidInput(f"diagonal for {a!r} is not a morphism a -> a(x)a")
    u, witnesses = terminal_maps(M)
    if witnesses:
        return {"passed": False, "witnesses": witnesses, "product_checked": False}
    t, tm = M.tensor_obj, M.tensor_mor
    for a in C.objects:
        if C.compose(tm(C.identity(a), u[a]), diagonals[a]) != C.identity(a):
            witnesses.append({"condition": "counit", "object": repr(a)})
    for f in C.morphisms():
        a, b = C.source(f), C.target(f)
        if C.compose(diagonals[b], f) != C.compose(tm(f, f), diagonals[a]):
            witnesses.append({"condition": "naturality", "morphism": repr(f)})
    for a, b in itertools.product(C.objects, repeat=2):
        middle = tm(tm(C.identity(a), M.braiding(a, b)), C.identity(b))
        lhs = C.compose(middle, tm(diagonals[a], diagonals[b]))
        if lhs != diagonals[t(a, b)]:
            witnesses.append({"condition": "tensor compatibility", "objects": [repr(a), repr(b)]})
    if witnesses:
        return {"passed": False, "witnesses": witnesses, "product_checked": False}
    witnesses = check_products(M, u)
    return {"passed": not witnesses, "witnesses": witnesses, "product_checked": True}


def check_products(M: FinMonoidalCat, u: dict) -> list[dict]:
    """Hom(x, a(x)b) -> Hom(x, a) x Hom(x, b) is a bijection for all x, a, b."""
    C = M.base
    witnesses = []
    for a, b in itertools.product(C.objects, repeat=2):
        ab = M.tensor_obj(a, b)
        p1 = M.tensor_mor(C.identity(a), u[b])
        p2 = M.tensor_mor(u[a], C.identity(b))
        for x in C.objects:
            pairs = [(C.compose(p1, h), C.compose(p2, h)) for h in C.hom(x, ab)]
            if len(set(pairs)) != len(pairs) or len(pairs) != len(C.hom(x, a)) * len(C.hom(x, b)):
                witnesses.append({"condition": "product", "objects": [repr(x), repr(a), repr(b)]})
    return witnesses


def one_object_monoid(elements, mul: Callable, unit, name: str = "monoid") -> FinMonoidalCat:
    """A commutative monoid as a one-object category with tensor given by multiplication."""
    elements = list(elements)
    C = FinCat(["*"], {("*", "*"): elements}, {"*": unit}, lambda g, f: mul(g, f), name=name)
    return FinMonoidalCat(C, lambda a, b: "*", lambda f, g: mul(f, g), "*", braiding=lambda a, b: unit, name=name)
