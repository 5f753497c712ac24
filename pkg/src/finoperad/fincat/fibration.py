"""Cartesian-lift search and isomorphism checks for functors between finite categories."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .core import FinCat, Functor


@dataclass
class FibrationReport:
    fibration: bool
    checked: int
    lifts: list = field(default_factory=list)
    missing: list = field(default_factory=list)

    def witnesses(self) -> list[dict]:
        return [{"object": repr(x), "base_morphism": repr(f)} for x, f in self.missing]


class _LiftSearch:
    """Caches the images under p and the hom-sets of E grouped by image."""

    def __init__(self, p: Functor):
        self.p = p
        E = p.source
        self.image = {f: p(f) for f in E.morphisms()}
        self.ob = {a: p.ob(a) for a in E.objects}
        self.by_image: dict = {}
        for a in E.objects:
            for b in E.objects:
                groups: dict = {}
                for f in E.hom(a, b):
                    groups.setdefault(self.image[f], []).append(f)
                self.by_image[(a, b)] = groups

    def is_cartesian(self, phi) -> bool:
        E, B = self.p.source, self.p.target
        X1, X = E.source(phi), E.target(phi)
        f = self.image[phi]
        for X2 in E.objects:
            over = self.by_image[(X2, X)]
            if not over:
                continue
            counts = Counter((self.image[chi], E.compose(phi, chi)) for chi in E.hom(X2, X1))
            for g in B.hom(self.ob[X2], self.ob[X1]):
                for psi in over.get(B.compose(f, g), ()):
                    if counts[(g, psi)] != 1:
                        return False
        return True

    def lifts(self, X, f) -> list:
        E = self.p.source
        B1 = self.p.target.source(f)
        return [
            phi
            for X1 in E.objects
            if self.ob[X1] == B1
            for phi in self.by_image[(X1, X)].get(f, ())
            if self.is_cartesian(phi)
        ]


def is_cartesian(p: Functor, phi) -> bool:
    """phi: X' -> X is p-Cartesian.

    For every psi: X'' -> X and g: p(X'') -> p(X') with p(phi) . g == p(psi)
    there is exactly one chi: X'' -> X' over g with phi . chi == psi.
    """
    return _LiftSearch(p).is_cartesian(phi)


def cartesian_lifts(p: Functor, X, f) -> list:
    """Every Cartesian morphism over f: B' -> p(X) with target X."""
    return _LiftSearch(p).lifts(X, f)


def check_grothendieck_fibration(p: Functor) -> FibrationReport:
    """Search for a Cartesian lift of every base morphism into the image of every object."""
    E, B = p.source, p.target
    search = _LiftSearch(p)
    report = FibrationReport(True, 0)
    for X in E.objects:
        for B1 in B.objects:
            for f in B.hom(B1, search.ob[X]):
                report.checked += 1
                found = search.lifts(X, f)
                if found:
                    report.lifts.append((X, f, found))
                else:
                    report.fibration = False
                    report.missing.append((X, f))
    return report


def check_isomorphism(F: Functor) -> list[dict]:
    """Witnesses against F being an isomorphism of categories (empty list when it is one)."""
    S, T = F.source, F.target
    witnesses = F.validate()
    if witnesses:
        return witnesses
    images = [F.ob(a) for a in S.objects]
    if len(set(images)) != len(images) or set(images) != set(T.objects):
        return [{"law": "bijective on objects", "sources": len(images), "targets": len(T.objects)}]
    for a in S.objects:
        for b in S.objects:
            mapped = [F(f) for f in S.hom(a, b)]
            target = T.hom(F.ob(a), F.ob(b))
            if len(set(mapped)) != len(mapped) or set(mapped) != set(target):
                witnesses.append({"law": "bijective on homs", "source": repr(a), "target": repr(b),
                                  "sizes": [len(mapped), len(target)]})
    return witnesses


def full_image(p: Functor, name: str = "") -> FinCat:
    """The wide-on-image subcategory of the target hit by p, as a category in its own right."""
    T = p.target
    objects = sorted({p.ob(a) for a in p.source.objects}, key=T.objects.index)
    hit = {p(f) for f in p.source.morphisms()}
    closure = set(hit)
    changed = True
    while changed:
        changed = False
        for f in list(closure):
            for g in list(closure):
                if T.target(f) == T.source(g):
                    h = T.compose(g, f)
                    if h not in closure:
                        closure.add(h)
                        changed = True
    homs = {(a, b): [f for f in T.hom(a, b) if f in closure] for a in objects for b in objects}
    return FinCat(objects, homs, {a: T.identity(a) for a in objects}, T.compose, name=name or f"image({p.name})")
