from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping

from ..errors import BudgetExceeded, CompositionMismatch, IncompleteData, InvalidInput


@dataclass(frozen=True)
class Arrow:
    """Generic morphism record: endpoints plus whatever data pins the morphism down."""

    source: Any
    target: Any
    data: Any


class FinCat:
    """A finite category presented by hom-sets, identities and a composition rule.

    Morphisms are arbitrary hashable values, distinct across hom-sets.
    ``composition`` is either a callable ``(g, f) -> g . f`` or a table keyed
    by ``(g, f)``.
    """

    def __init__(
        self,
        objects: Iterable[Hashable],
        homs: Mapping[tuple, Iterable[Hashable]],
        identities: Mapping[Hashable, Hashable],
        composition: Callable | Mapping,
        name: str = "",
    ):
        self.objects = tuple(objects)
        self.name = name
        self._object_set = set(self.objects)
        if len(self._object_set) != len(self.objects):
            raise InvalidInput("duplicate objects")
        self._homs: dict[tuple, tuple] = {}
        self._source: dict = {}
        self._target: dict = {}
        for (a, b), ms in homs.items():
            if a not in self._object_set or b not in self._object_set:
                raise InvalidInput(f"hom-set ({a!r}, {b!r}) names an unknown object")
            ms = tuple(ms)
            self._homs[(a, b)] = ms
            for f in ms:
                if f in self._source:
                    raise InvalidInput(f"morphism {f!r} appears in two hom-sets")
                self._source[f] = a
                self._target[f] = b
        self._identity = dict(identities)
        for a in self.objects:
            if a not in self._identity:
                raise IncompleteData(f"no identity for object {a!r}")
        if callable(composition):
            self._compose_fn = composition
            self._table = None
        else:
            self._compose_fn = None
            self._table = dict(composition)

    def __repr__(self) -> str:
        label = self.name or "FinCat"
        return f"<{label}: {len(self.objects)} objects, {self.morphism_count()} morphisms>"

    def hom(self, a, b) -> tuple:
        return self._homs.get((a, b), ())

    def source(self, f):
        return self._source[f]

    def target(self, f):
        return self._target[f]

    def identity(self, a):
        return self._identity[a]

    def is_identity(self, f) -> bool:
        return self._identity[self._source[f]] == f

    def has_morphism(self, f) -> bool:
        return f in self._source

    def morphisms(self) -> Iterator:
        for a in self.objects:
            for b in self.objects:
                yield from self.hom(a, b)

    def morphism_count(self) -> int:
        return len(self._source)

    def compose(self, g, f):
        """Return g after f."""
        if self._target[f] != self._source[g]:
            raise CompositionMismatch(f"cannot compose {g!r} after {f!r}")
        if self._compose_fn is not None:
            return self._compose_fn(g, f)
        try:
            return self._table[(g, f)]
        except KeyError:
            raise IncompleteData(f"composition table has no entry for ({g!r}, {f!r})") from None

    def compose_path(self, *fs):
        """Compose left to right in diagram order: compose_path(f, g, h) == h . g . f."""
        out = fs[0]
        for g in fs[1:]:
            out = self.compose(g, out)
        return out

    def op(self) -> "FinCat":
        homs = {(b, a): ms for (a, b), ms in self._homs.items()}
        return FinCat(self.objects, homs, self._identity, lambda g, f: self.compose(f, g), name=f"{self.name}^op")

    def full_subcategory(self, objects: Iterable, name: str = "") -> "FinCat":
        keep = [a for a in self.objects if a in set(objects)]
        homs = {(a, b): self.hom(a, b) for a in keep for b in keep}
        return FinCat(keep, homs, {a: self._identity[a] for a in keep}, self.compose, name=name or self.name)

    def wide_subcategory(self, keep_morphism: Callable[[Any], bool], name: str = "") -> "FinCat":
        homs = {key: tuple(f for f in ms if keep_morphism(f)) for key, ms in self._homs.items()}
        return FinCat(self.objects, homs, self._identity, self.compose, name=name or self.name)

    def composable_pairs(self) -> Iterator[tuple]:
        """Pairs (f, g) with g . f defined."""
        for a in self.objects:
            for b in self.objects:
                fs = self.hom(a, b)
                if not fs:
                    continue
                for c in self.objects:
                    for f in fs:
                        for g in self.hom(b, c):
                            yield f, g

    def count_composable_triples(self) -> int:
        sizes = {key: len(v) for key, v in self._homs.items()}
        total = 0
        for a, b, c, d in itertools.product(self.objects, repeat=4):
            total += sizes.get((a, b), 0) * sizes.get((b, c), 0) * sizes.get((c, d), 0)
        return total

    def validate(self, budget: int | None = 2_000_000) -> list[dict]:
        """Exhaustive check of the category laws; returns located failures."""
        witnesses: list[dict] = []
        for a in self.objects:
            ida = self._identity[a]
            if self._source.get(ida) != a or self._target.get(ida) != a:
                witnesses.append({"law": "identity-endpoints", "object": repr(a)})
        if witnesses:
            return witnesses
        if budget is not None:
            triples = self.count_composable_triples()
            if triples > budget:
                raise BudgetExceeded("composable triples", triples, budget)
        for f, g in self.composable_pairs():
            h = self.compose(g, f)
            if self._source.get(h) != self._source[f] or self._target.get(h) != self._target[g]:
                witnesses.append({"law": "closure", "f": repr(f), "g": repr(g), "composite": repr(h)})
        if witnesses:
            return witnesses
        for f in self.morphisms():
            a, b = self._source[f], self._target[f]
            if self.compose(f, self._identity[a]) != f or self.compose(self._identity[b], f) != f:
                witnesses.append({"law": "unit", "f": repr(f)})
        for f, g in self.composable_pairs():
            gf = self.compose(g, f)
            for h in itertools.chain.from_iterable(self.hom(self._target[g], c) for c in self.objects):
                if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                    witnesses.append({"law": "associativity", "f": repr(f), "g": repr(g), "h": repr(h)})
        return witnesses

    def memoized(self) -> "FinCat":
        """Same category with a cache in front of composition."""
        cache: dict = {}
        base = self.compose

        def compose(g, f):
            key = (g, f)
            if key not in cache:
                cache[key] = base(g, f)
            return cache[key]

        return FinCat(self.objects, self._homs, self._identity, compose, name=self.name)

    @classmethod
    def from_table(cls, objects, homs, identities, table, name: str = "") -> "FinCat":
        return cls(objects, homs, identities, dict(table), name=name)


def product_category(C: FinCat, D: FinCat, name: str = "") -> FinCat:
    """C x D with morphisms the pairs (f, g)."""
    objects = [(c, d) for c in C.objects for d in D.objects]
    homs = {}
    for (c, d) in objects:
        for (c2, d2) in objects:
            homs[((c, d), (c2, d2))] = [(f, g) for f in C.hom(c, c2) for g in D.hom(d, d2)]
    identities = {(c, d): (C.identity(c), D.identity(d)) for (c, d) in objects}

    def compose(second, first):
        return (C.compose(second[0], first[0]), D.compose(second[1], first[1]))

    return FinCat(objects, homs, identities, compose, name=name or f"{C.name}x{D.name}")


def discrete_category(objects: Iterable, name: str = "discrete") -> FinCat:
    objects = list(objects)
    homs = {(a, a): [("id", a)] for a in objects}
    return FinCat(objects, homs, {a: ("id", a) for a in objects}, lambda g, f: f, name=name)


def terminal_category() -> FinCat:
    return discrete_category(["*"], name="terminal")


def poset_category(elements: Iterable, leq: Callable[[Any, Any], bool], name: str = "poset") -> FinCat:
    """Thin category of a preorder; the morphism a -> b is the pair (a, b)."""
    elements = list(elements)
    homs = {(a, b): [(a, b)] if leq(a, b) else [] for a in elements for b in elements}

    def compose(g, f):
        return (f[0], g[1])

    return FinCat(elements, homs, {a: (a, a) for a in elements}, compose, name=name)


def with_terminal(C: FinCat, top: Hashable = "top") -> FinCat:
    """C with a freshly adjoined terminal object."""
    objects = list(C.objects) + [top]
    homs = {(a, b): C.hom(a, b) for a in C.objects for b in C.objects}
    for a in objects:
        homs[(a, top)] = [("!", a)]
    homs.update({(top, a): [] for a in C.objects})

    def compose(g, f):
        if isinstance(g, tuple) and len(g) == 2 and g[0] == "!":
            return ("!", _source_of(f))
        return C.compose(g, f)

    def _source_of(f):
        if isinstance(f, tuple) and len(f) == 2 and f[0] == "!":
            return f[1]
        return C.source(f)

    identities = {a: C.identity(a) for a in C.objects}
    identities[top] = ("!", top)
    return FinCat(objects, homs, identities, compose, name=f"{C.name}+top")


class Functor:
    """A functor between finite categories, given by object and morphism maps."""

    def __init__(self, source: FinCat, target: FinCat, on_objects, on_morphisms, name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        self._ob = on_objects
        self._mor = on_morphisms

    def ob(self, a):
        return self._ob(a) if callable(self._ob) else self._ob[a]

    def __call__(self, f):
        return self._mor(f) if callable(self._mor) else self._mor[f]

    def validate(self) -> list[dict]:
        S, T = self.source, self.target
        witnesses = []
        for a in S.objects:
            if self.ob(a) not in T._object_set:
                witnesses.append({"law": "objects", "object": repr(a)})
            elif self(S.identity(a)) != T.identity(self.ob(a)):
                witnesses.append({"law": "identity", "object": repr(a)})
        if witnesses:
            return witnesses
        for f in S.morphisms():
            Ff = self(f)
            if not T.has_morphism(Ff) or T.source(Ff) != self.ob(S.source(f)) or T.target(Ff) != self.ob(S.target(f)):
                witnesses.append({"law": "endpoints", "morphism": repr(f)})
        if witnesses:
            return witnesses
        for f, g in S.composable_pairs():
            if self(S.compose(g, f)) != T.compose(self(g), self(f)):
                witnesses.append({"law": "composition", "f": repr(f), "g": repr(g)})
        return witnesses


def identity_functor(C: FinCat) -> Functor:
    return Functor(C, C, lambda a: a, lambda f: f, name=f"id_{C.name}")


def compose_functors(G: Functor, F: Functor) -> Functor:
    return Functor(F.source, G.target, lambda a: G.ob(F.ob(a)), lambda f: G(F(f)), name=f"{G.name}.{F.name}")


class SetFunctor:
    """A covariant functor from a finite category to finite sets.

    ``carriers[a]`` lists the elements over a. ``actions[f]`` is the function
    of f as a tuple of indices: element i of the source carrier goes to
    element ``actions[f][i]`` of the target carrier. ``actions`` may be a
    callable; results are cached.
    """

    def __init__(self, base: FinCat, carriers: Mapping, actions, name: str = ""):
        self.base = base
        self.name = name
        self.carriers = {a: tuple(carriers[a]) for a in base.objects}
        self._actions = actions
        self._cache: dict = {}

    def carrier(self, a) -> tuple:
        return self.carriers[a]

    def size(self, a) -> int:
        return len(self.carriers[a])

    def act(self, f) -> tuple[int, ...]:
        if f not in self._cache:
            table = self._actions(f) if callable(self._actions) else self._actions[f]
            self._cache[f] = tuple(int(x) for x in table)
        return self._cache[f]

    def apply(self, f, i: int) -> int:
        return self.act(f)[i]

    def validate(self) -> list[dict]:
        C = self.base
        witnesses = []
        for f in C.morphisms():
            table = self.act(f)
            a, b = C.source(f), C.target(f)
            if len(table) != self.size(a) or any(not 0 <= x < self.size(b) for x in table):
                witnesses.append({"law": "shape", "morphism": repr(f)})
        if witnesses:
            return witnesses
        for a in C.objects:
            if self.act(C.identity(a)) != tuple(range(self.size(a))):
                witnesses.append({"law": "identity", "object": repr(a)})
        for f, g in C.composable_pairs():
            tf, tg = self.act(f), self.act(g)
            if tuple(tg[x] for x in tf) != self.act(C.compose(g, f)):
                witnesses.append({"law": "composition", "f": repr(f), "g": repr(g)})
        return witnesses


class NatTrans:
    """Natural transformation between set-valued functors on the same base."""

    def __init__(self, source: SetFunctor, target: SetFunctor, components: Mapping):
        self.source = source
        self.target = target
        self.components = {a: tuple(int(x) for x in components[a]) for a in source.base.objects}

    def __getitem__(self, a) -> tuple[int, ...]:
        return self.components[a]

    def validate(self) -> list[dict]:
        X, Y = self.source, self.target
        witnesses = []
        for a in X.base.objects:
            comp = self.components[a]
            if len(comp) != X.size(a) or any(not 0 <= y < Y.size(a) for y in comp):
                witnesses.append({"law": "shape", "object": repr(a)})
        if witnesses:
            return witnesses
        for f in X.base.morphisms():
            a, b = X.base.source(f), X.base.target(f)
            ca, cb = self.components[a], self.components[b]
            Xf, Yf = X.act(f), Y.act(f)
            for i in range(X.size(a)):
                if cb[Xf[i]] != Yf[ca[i]]:
                    witnesses.append({"law": "naturality", "morphism": repr(f), "element": i})
                    break
        return witnesses

    def is_isomorphism(self) -> bool:
        return all(
            sorted(self.components[a]) == list(range(self.target.size(a))) for a in self.source.base.objects
        )


def restrict(Y: SetFunctor, F: Functor) -> SetFunctor:
    """Precomposition Y . F."""
    if F.target is not Y.base:
        raise InvalidInput("restrict: functor target is not the base of the set functor")
    A = F.source
    return SetFunctor(A, {a: Y.carrier(F.ob(a)) for a in A.objects}, lambda k: Y.act(F(k)), name=f"{Y.name}.{F.name}")


def constant_functor(C: FinCat, elements: Iterable) -> SetFunctor:
    elements = tuple(elements)
    ident = tuple(range(len(elements)))
    return SetFunctor(C, {a: elements for a in C.objects}, lambda f: ident, name="const")


def representable(C: FinCat, a) -> SetFunctor:
    """The covariant functor Hom(a, -); its carriers are morphisms out of a."""
    carriers = {b: C.hom(a, b) for b in C.objects}
    index = {b: {h: i for i, h in enumerate(hs)} for b, hs in carriers.items()}

    def act(f):
        b, c = C.source(f), C.target(f)
        return tuple(index[c][C.compose(f, h)] for h in carriers[b])

    return SetFunctor(C, carriers, act, name=f"Hom({a!r},-)")
