"""The simplex category at bounded size and the gap functor into the associative category.

Objects of the simplex category are the integers n standing for [n] = {0 < ... < n}.
A morphism of the associative category is a pointed map together with a
linear order on each of its fibers.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator

from . import finseg
from .errors import CompositionMismatch, InvalidInput
from .finseg import PointedMap


@dataclass(frozen=True)
class SimplexMap:
    """A monotone map [m] -> [n]."""

    m: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.m + 1:
            raise InvalidInput(f"values: expected {self.m + 1} entries, got {len(values)}")
        if any(not 0 <= v <= self.n for v in values):
            raise InvalidInput(f"values {values} leave [{self.n}]")
        if any(a > b for a, b in zip(values, values[1:])):
            raise InvalidInput(f"values {values} are not monotone")

    def __call__(self, i: int) -> int:
        return self.values[i]


@dataclass(frozen=True)
class AssMorphism:
    """A pointed map with a chosen linear order on each fiber over 1..n.

    ``orders[j - 1]`` lists the fiber over j, smallest first.
    """

    map: PointedMap
    orders: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        orders = tuple(tuple(int(i) for i in o) for o in self.orders)
        object.__setattr__(self, "orders", orders)
        if len(orders) != self.map.n:
            raise InvalidInput(f"orders: expected {self.map.n} fibers, got {len(orders)}")
        for j, order in enumerate(orders, 1):
            if sorted(order) != list(self.map.fiber(j)):
                raise InvalidInput(f"orders[{j}] = {order} is not an ordering of the fiber over {j}")

    @property
    def m(self) -> int:
        return self.map.m

    @property
    def n(self) -> int:
        return self.map.n


def identity(n: int) -> SimplexMap:
    return SimplexMap(n, n, tuple(range(n + 1)))


def compose(g: SimplexMap, f: SimplexMap) -> SimplexMap:
    if f.n != g.m:
        raise CompositionMismatch(f"cannot compose [{g.m}]->[{g.n}] after [{f.m}]->[{f.n}]")
    return SimplexMap(f.m, g.n, tuple(g.values[v] for v in f.values))


def all_maps(m: int, n: int) -> Iterator[SimplexMap]:
    for values in itertools.combinations_with_replacement(range(n + 1), m + 1):
        yield SimplexMap(m, n, values)


def edge(n: int, k: int) -> SimplexMap:
    """The k-th spine edge [1] -> [n], hitting k-1 and k."""
    if not 1 <= k <= n:
        raise InvalidInput(f"edge {k} outside 1..{n}")
    return SimplexMap(1, n, (k - 1, k))


def vertex(n: int, k: int) -> SimplexMap:
    return SimplexMap(0, n, (k,))


def join(a, b):
    """Join of simplices: [m] * [n] = [m + n + 1], and the blockwise join of maps."""
    if isinstance(a, int) and isinstance(b, int):
        return a + b + 1
    if isinstance(a, SimplexMap) and isinstance(b, SimplexMap):
        shift = a.n + 1
        return SimplexMap(a.m + b.m + 1, a.n + b.n + 1, a.values + tuple(shift + v for v in b.values))
    raise InvalidInput("join takes two integers or two simplex maps")


def join_inclusions(m: int, n: int) -> tuple[SimplexMap, SimplexMap]:
    """The canonical maps [m] -> [m] * [n] <- [n]."""
    top = m + n + 1
    return SimplexMap(m, top, tuple(range(m + 1))), SimplexMap(n, top, tuple(range(m + 1, top + 1)))


def is_convex(f: SimplexMap) -> bool:
    """Injective with image an interval."""
    v = f.values
    return all(b == a + 1 for a, b in zip(v, v[1:]))


def phi(f: SimplexMap) -> AssMorphism:
    """Gap functor: f: [n] -> [m] gives <m> -> <n>.

    Gap i of [m] (between i-1 and i) goes to gap j of [n] when
    f(j-1) < i <= f(j), and to the basepoint if there is no such j. Fibers
    are ordered as subsets of 1..m.
    """
    n, m = f.m, f.n
    values = [0] * m
    for j in range(1, n + 1):
        for i in range(f.values[j - 1] + 1, f.values[j] + 1):
            values[i - 1] = j
    pm = PointedMap(m, n, tuple(values))
    return AssMorphism(pm, tuple(pm.fiber(j) for j in range(1, n + 1)))


def ass_identity(n: int) -> AssMorphism:
    return AssMorphism(finseg.identity(n), tuple((j,) for j in range(1, n + 1)))


def compose_ass(g: AssMorphism, f: AssMorphism) -> AssMorphism:
    """Return g after f, with lexicographically composed fiber orders.

    Inside a fiber of g . f, a precedes b when f(a) precedes f(b) in g's
    order, or f(a) == f(b) and a precedes b in f's order.
    """
    if f.n != g.m:
        raise CompositionMismatch(f"cannot compose <{g.m}>-><{g.n}> after <{f.m}>-><{f.n}>")
    orders = tuple(tuple(a for i in g_order for a in f.orders[i - 1]) for g_order in g.orders)
    return AssMorphism(finseg.compose(g.map, f.map), orders)


def ass_maps(m: int, n: int) -> Iterator[AssMorphism]:
    """Every morphism <m> -> <n> of the associative category."""
    for pm in finseg.all_maps(m, n):
        fibers = [pm.fiber(j) for j in range(1, n + 1)]
        for orders in itertools.product(*(itertools.permutations(fb) for fb in fibers)):
            yield AssMorphism(pm, orders)


def lexicographic_oracle(g: AssMorphism, f: AssMorphism) -> AssMorphism:
    """Composite orders recovered from pairwise comparisons, by sorting.

    Independent of ``compose_ass``: each fiber of g . f is sorted with the
    pairwise rule a < b iff f(a) <_g f(b), or f(a) == f(b) and a <_f b.
    """
    gf = finseg.compose(g.map, f.map)
    g_pos = {i: p for order in g.orders for p, i in enumerate(order)}
    f_pos = {a: p for order in f.orders for p, a in enumerate(order)}

    def before(a: int, b: int) -> int:
        fa, fb = f.map(a), f.map(b)
        if fa != fb:
            return -1 if g_pos[fa] < g_pos[fb] else 1
        return -1 if f_pos[a] < f_pos[b] else (0 if a == b else 1)

    orders = tuple(tuple(sorted(gf.fiber(j), key=functools.cmp_to_key(before))) for j in range(1, gf.n + 1))
    return AssMorphism(gf, orders)


def middle_marking(m: int, n: int) -> PointedMap:
    """The map <1> -> phi([m] * [n]) = <m + n + 1> picking the middle gap m + 1."""
    top = m + n + 1
    return PointedMap(1, top, (m + 1,))


def to_json(f: SimplexMap) -> dict:
    return {"m": f.m, "n": f.n, "values": list(f.values)}


def from_json(data) -> SimplexMap:
    if not isinstance(data, dict) or not {"m", "n", "values"} <= set(data):
        raise InvalidInput("simplex map: expected an object with fields m, n, values")
    return SimplexMap(int(data["m"]), int(data["n"]), tuple(data["values"]))


def ass_to_json(f: AssMorphism) -> dict:
    return {"map": finseg.to_json(f.map), "orders": [list(o) for o in f.orders]}


def ass_from_json(data) -> AssMorphism:
    if not isinstance(data, dict) or "map" not in data or "orders" not in data:
        raise InvalidInput("associative morphism: expected an object with fields map, orders")
    return AssMorphism(finseg.from_json(data["map"]), tuple(tuple(o) for o in data["orders"]))


def verify_phi_functorial(bound: int = 4) -> list[dict]:
    """phi(g . f) == phi(f) . phi(g) for all composable f, g with objects <= bound."""
    witnesses = []
    maps = {(a, b): list(all_maps(a, b)) for a in range(bound + 1) for b in range(bound + 1)}
    images = {f: phi(f) for fs in maps.values() for f in fs}
    for a, b, c in itertools.product(range(bound + 1), repeat=3):
        for f in maps[(a, b)]:
            for g in maps[(b, c)]:
                if images[compose(g, f)] != compose_ass(images[f], images[g]):
                    witnesses.append({"f": list(f.values), "g": list(g.values), "objects": [a, b, c]})
    for n in range(bound + 1):
        if phi(identity(n)) != ass_identity(n):
            witnesses.append({"identity": n})
    return witnesses


def verify_convex_inert(bound: int = 4) -> list[dict]:
    """phi carries every convex map with objects <= bound to an inert map."""
    witnesses = []
    for a in range(bound + 1):
        for b in range(bound + 1):
            for f in all_maps(a, b):
                if is_convex(f) and not finseg.is_inert(phi(f).map):
                    witnesses.append({"f": list(f.values), "objects": [a, b]})
    return witnesses
