"""Builders for the index categories: pointed finite sets and their relatives, truncated at size N."""
from __future__ import annotations

import functools
import itertools

from .. import finseg, simplex
from ..errors import InvalidInput
from ..finseg import PointedMap
from .core import Arrow, FinCat, Functor

MAX_N = 5
NAMES = ("finseg", "catass", "triv", "e0", "fintimes", "pointed", "delta")


def _check_n(N: int, max_n: int) -> None:
    if not 0 <= N <= max_n:
        raise InvalidInput(f"N = {N} outside 0..{max_n}")


@functools.lru_cache(maxsize=None)
def finseg_category(N: int) -> FinCat:
    """FinSeg restricted to <0>..<N>; morphisms are PointedMap values."""
    objects = list(range(N + 1))
    homs = {(m, n): list(finseg.all_maps(m, n)) for m in objects for n in objects}
    return FinCat(objects, homs, {n: finseg.identity(n) for n in objects}, finseg.compose, name=f"FinSeg<={N}")


def _forgetful(E: FinCat, N: int, on_objects, on_morphisms, name: str) -> Functor:
    return Functor(E, finseg_category(N), on_objects, on_morphisms, name=name)


def catass_category(N: int) -> FinCat:
    objects = list(range(N + 1))
    homs = {(m, n): list(simplex.ass_maps(m, n)) for m in objects for n in objects}
    return FinCat(
        objects, homs, {n: simplex.ass_identity(n) for n in objects}, simplex.compose_ass, name=f"CatAss<={N}"
    )


def fintimes_category(N: int) -> FinCat:
    """Pairs (n, S) with S a subset of 1..n; alpha: (n, S) -> (n', S') needs alpha^-1 S' inside S."""
    objects = [
        (n, S) for n in range(N + 1) for size in range(n + 1) for S in itertools.combinations(range(1, n + 1), size)
    ]
    homs = {}
    for (n, S) in objects:
        for (n2, S2) in objects:
            homs[((n, S), (n2, S2))] = [
                Arrow((n, S), (n2, S2), f)
                for f in finseg.all_maps(n, n2)
                if all(i in S for i in range(1, n + 1) if f(i) in S2)
            ]
    identities = {ob: Arrow(ob, ob, finseg.identity(ob[0])) for ob in objects}

    def compose(g, f):
        return Arrow(f.source, g.target, finseg.compose(g.data, f.data))

    return FinCat(objects, homs, identities, compose, name=f"Fintimes<={N}")


def pointed_category(N: int) -> FinCat:
    """Pairs (n, i) with 1 <= i <= n; morphisms are pointed maps sending i to j."""
    objects = [(n, i) for n in range(1, N + 1) for i in range(1, n + 1)]
    homs = {}
    for (n, i) in objects:
        for (n2, j) in objects:
            homs[((n, i), (n2, j))] = [Arrow((n, i), (n2, j), f) for f in finseg.all_maps(n, n2) if f(i) == j]
    identities = {ob: Arrow(ob, ob, finseg.identity(ob[0])) for ob in objects}

    def compose(g, f):
        return Arrow(f.source, g.target, finseg.compose(g.data, f.data))

    return FinCat(objects, homs, identities, compose, name=f"PointedFinSeg<={N}")


def delta_category(N: int) -> FinCat:
    objects = list(range(N + 1))
    homs = {(m, n): list(simplex.all_maps(m, n)) for m in objects for n in objects}
    return FinCat(objects, homs, {n: simplex.identity(n) for n in objects}, simplex.compose, name=f"Delta<={N}")


def build_standard(name: str, N: int, max_n: int = MAX_N) -> tuple[FinCat, Functor | None]:
    """One of the standard index categories on objects of size <= N.

    Returns the category and its forgetful functor to FinSeg<=N, or None for
    the simplex category, which has no such functor.
    """
    _check_n(N, max_n)
    key = name.lower()
    if key == "finseg":
        C = finseg_category(N)
        return C, Functor(C, C, lambda a: a, lambda f: f, name="id")
    if key == "catass":
        C = catass_category(N)
        return C, _forgetful(C, N, lambda a: a, lambda f: f.map, "forget orders")
    if key == "triv":
        C = finseg_category(N).wide_subcategory(finseg.is_inert, name=f"Triv<={N}")
        return C, _forgetful(C, N, lambda a: a, lambda f: f, "inclusion")
    if key == "e0":
        C = finseg_category(N).wide_subcategory(finseg.is_semi_inert, name=f"InjSeg<={N}")
        return C, _forgetful(C, N, lambda a: a, lambda f: f, "inclusion")
    if key == "fintimes":
        C = fintimes_category(N)
        return C, _forgetful(C, N, lambda a: a[0], lambda f: f.data, "forget subset")
    if key == "pointed":
        C = pointed_category(N)
        return C, _forgetful(C, N, lambda a: a[0], lambda f: f.data, "forget point")
    if key == "delta":
        return delta_category(N), None
    raise InvalidInput(f"unknown standard category {name!r}; expected one of {', '.join(NAMES)}")


def preimage_subset(f: PointedMap, S: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(i for i in range(1, f.m + 1) if f(i) in S)
