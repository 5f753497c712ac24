"""Colimits of set-valued functors and pointwise left Kan extensions."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import CheckFailed, InvalidInput
from ..unionfind import UnionFind
from .core import Arrow, FinCat, Functor, NatTrans, SetFunctor, restrict


@dataclass
class Colimit:
    """Colimit of a set functor: representatives plus the legs of the cocone."""

    elements: tuple
    legs: dict

    def __len__(self) -> int:
        return len(self.elements)


def colimit(X: SetFunctor) -> Colimit:
    """Disjoint union of the carriers modulo x ~ X(f)(x)."""
    C = X.base
    uf = UnionFind((a, i) for a in C.objects for i in range(X.size(a)))
    for f in C.morphisms():
        a, b = C.source(f), C.target(f)
        for i, j in enumerate(X.act(f)):
            uf.union((a, i), (b, j))
    labels, count = uf.labels()
    reps: list = [None] * count
    for a in C.objects:
        for i in range(X.size(a)):
            k = labels[(a, i)]
            if reps[k] is None:
                reps[k] = (a, X.carrier(a)[i])
    legs = {a: tuple(labels[(a, i)] for i in range(X.size(a))) for a in C.objects}
    return Colimit(tuple(reps), legs)


def comma_category(F: Functor, b) -> FinCat:
    """The comma category F / b: pairs (a, u: F(a) -> b)."""
    A, B = F.source, F.target
    objects = [(a, u) for a in A.objects for u in B.hom(F.ob(a), b)]
    homs = {}
    for (a, u) in objects:
        for (a2, u2) in objects:
            homs[((a, u), (a2, u2))] = [
                Arrow((a, u), (a2, u2), k) for k in A.hom(a, a2) if B.compose(u2, F(k)) == u
            ]
    identities = {(a, u): Arrow((a, u), (a, u), A.identity(a)) for (a, u) in objects}

    def compose(g, f):
        return Arrow(f.source, g.target, A.compose(g.data, f.data))

    return FinCat(objects, homs, identities, compose, name=f"{F.name}/{b!r}")


class LeftKan:
    """Pointwise left Kan extension of X along F, built from comma-category colimits.

    Elements of ``functor.carrier(b)`` are representatives ``(a, u, x)`` with
    u: F(a) -> b and x in X(a).
    """

    def __init__(self, F: Functor, X: SetFunctor):
        if X.base is not F.source:
            raise InvalidInput("left Kan extension: set functor must live on the functor's source")
        self.F = F
        self.X = X
        A, B = F.source, F.target
        self._labels: dict = {}
        carriers = {}
        for b in B.objects:
            uf = UnionFind(
                (a, u, i) for a in A.objects for u in B.hom(F.ob(a), b) for i in range(X.size(a))
            )
            for k in A.morphisms():
                a, a2 = A.source(k), A.target(k)
                Fk = F(k)
                Xk = X.act(k)
                for u in B.hom(F.ob(a2), b):
                    uFk = B.compose(u, Fk)
                    for i in range(X.size(a)):
                        uf.union((a, uFk, i), (a2, u, Xk[i]))
            labels, count = uf.labels()
            reps: list = [None] * count
            for (a, u, i), k in labels.items():
                if reps[k] is None:
                    reps[k] = (a, u, X.carrier(a)[i])
            self._labels[b] = labels
            carriers[b] = tuple(reps)

        def act(g):
            b, b2 = B.source(g), B.target(g)
            labels2 = self._labels[b2]
            out = [0] * len(carriers[b])
            for (a, u, i), k in self._labels[b].items():
                out[k] = labels2[(a, B.compose(g, u), i)]
            return out

        self.functor = SetFunctor(B, carriers, act, name=f"Lan_{F.name}({X.name})")
        self.unit = NatTrans(
            X,
            restrict(self.functor, F),
            {a: [self._labels[F.ob(a)][(a, B.identity(F.ob(a)), i)] for i in range(X.size(a))] for a in A.objects},
        )

    def class_of(self, b, a, u, i: int) -> int:
        """Index in Lan(b) of the element represented by x_i in X(a) along u: F(a) -> b."""
        return self._labels[b][(a, u, i)]

    def factor(self, Y: SetFunctor, alpha: NatTrans) -> NatTrans:
        """The unique beta: Lan X -> Y with (beta F) . unit == alpha.

        Raises CheckFailed if the induced map is not well defined.
        """
        B = self.F.target
        comps = {}
        for b in B.objects:
            comp: list = [None] * self.functor.size(b)
            for (a, u, i), k in self._labels[b].items():
                y = Y.act(u)[alpha[a][i]]
                if comp[k] is None:
                    comp[k] = y
                elif comp[k] != y:
                    raise CheckFailed("factorization through the Kan extension is not well defined", [{"object": repr(b)}])
            comps[b] = comp
        return NatTrans(self.functor, Y, comps)


def left_kan(F: Functor, X: SetFunctor) -> LeftKan:
    return LeftKan(F, X)


def counit(F: Functor, Y: SetFunctor) -> tuple[LeftKan, NatTrans]:
    """The counit Lan_F(Y . F) -> Y, [(a, u, y)] -> Y(u)(y)."""
    lan = LeftKan(F, restrict(Y, F))
    ident = NatTrans(lan.X, lan.X, {a: range(lan.X.size(a)) for a in F.source.objects})
    return lan, lan.factor(Y, ident)


def check_triangle_identities(F: Functor, X: SetFunctor, Y: SetFunctor) -> list[dict]:
    """Triangle identities of Lan_F -| F^* at X and at Y.

    For X: the composite Lan X -> Lan(F^* Lan X) -> Lan X is the identity.
    For Y: F^*Y -> F^* Lan(F^*Y) -> F^*Y is the identity.
    """
    witnesses = []
    lan = LeftKan(F, X)
    # Lan(unit) followed by counit at Lan X: send [(a, u, x)] to Lan X(u)(unit_a(x)).
    B = F.target
    for b in B.objects:
        for (a, u, i), k in lan._labels[b].items():
            image = lan.functor.act(u)[lan.unit[a][i]]
            if image != k:
                witnesses.append({"triangle": "left", "object": repr(b), "class": k})
                break
    lanY, eps = counit(F, Y)
    for a in F.source.objects:
        for i in range(Y.size(F.ob(a))):
            if eps[F.ob(a)][lanY.unit[a][i]] != i:
                witnesses.append({"triangle": "right", "object": repr(a), "element": i})
                break
    return witnesses
