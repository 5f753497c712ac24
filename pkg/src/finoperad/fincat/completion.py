"""Categories of square completions of a span of finite linear orders.

An instance is a span X <- X0 -> Y0 of nondecreasing maps (alpha, theta)
with alpha injective. Its completion category has as objects the commuting
squares X0 -> Y0 -> Y, X0 -> X -> Y with beta: Y0 -> Y injective,
and as morphisms the nondecreasing maps h: Y -> Y' under the square.

That category is infinite, so Y is taken skeletal, Y = {0 < ... < k-1}.
Replacing Y by the image of Y0 + X is right adjoint to the inclusion of the
jointly surjective squares, so both have weakly equivalent nerves. The
jointly surjective part is finite (k <= |Y0| + |X|) and thin, and its
homology is what ``completion_betti`` reports. ``completion_category`` builds
the bounded category with every square of size <= |Y0| + |X| for direct
cross-checks on small instances.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from ..errors import InvalidInput
from .core import Arrow, FinCat
from .nerve import BettiSummary, nerve_betti


@dataclass(frozen=True)
class SquareInstance:
    x0: int
    x: int
    y0: int
    alpha: tuple[int, ...]
    theta: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.alpha) != self.x0 or len(self.theta) != self.x0:
            raise InvalidInput("alpha and theta must have one entry per element of X0")
        if any(not 0 <= a < self.x for a in self.alpha) or any(b <= a for a, b in zip(self.alpha, self.alpha[1:])):
            raise InvalidInput(f"alpha {self.alpha} is not an increasing injection into {self.x} elements")
        if any(not 0 <= t < self.y0 for t in self.theta) or any(b < a for a, b in zip(self.theta, self.theta[1:])):
            raise InvalidInput(f"theta {self.theta} is not a nondecreasing map into {self.y0} elements")

    def to_json(self) -> dict:
        return {"x0": self.x0, "x": self.x, "y0": self.y0, "alpha": list(self.alpha), "theta": list(self.theta)}

    @classmethod
    def from_json(cls, data) -> "SquareInstance":
        if not isinstance(data, dict):
            raise InvalidInput("square instance: expected an object")
        for key in ("x0", "x", "y0"):
            if key not in data:
                raise InvalidInput(f"square instance: missing field '{key}'")
        x0 = int(data["x0"])
        alpha = tuple(data.get("alpha", range(x0)))
        theta = tuple(data.get("theta", [0] * x0))
        return cls(x0, int(data["x"]), int(data["y0"]), alpha, theta)


def _monotone(size: int, k: int) -> Iterator[tuple[int, ...]]:
    return itertools.combinations_with_replacement(range(k), size)


def instances(max_x0: int = 2, max_x: int = 3, max_y0: int = 2) -> Iterator[SquareInstance]:
    """Every span within the bounds, empty sets included."""
    for x0 in range(max_x0 + 1):
        for x in range(x0, max_x + 1):
            for y0 in range(max_y0 + 1):
                if x0 and not y0:
                    continue
                for alpha in itertools.combinations(range(x), x0):
                    for theta in _monotone(x0, y0):
                        yield SquareInstance(x0, x, y0, alpha, theta)


def completion_objects(inst: SquareInstance, max_k: int | None = None) -> list[tuple]:
    """Squares (k, beta, theta') with |Y| = k <= max_k, in lexicographic order."""
    if max_k is None:
        max_k = inst.y0 + inst.x
    objects = []
    for k in range(max_k + 1):
        for beta in itertools.combinations(range(k), inst.y0):
            for tp in _monotone(inst.x, k):
                if all(tp[a] == beta[t] for a, t in zip(inst.alpha, inst.theta)):
                    objects.append((k, beta, tp))
    return objects


def is_jointly_surjective(ob: tuple) -> bool:
    k, beta, tp = ob
    return len(set(beta) | set(tp)) == k


def _forced_map(src: tuple, tgt: tuple) -> tuple[int, ...] | None:
    """The unique morphism out of a jointly surjective square, if it exists."""
    k, beta, tp = src
    _, beta2, tp2 = tgt
    h: dict[int, int] = {}
    for a, b in itertools.chain(zip(beta, beta2), zip(tp, tp2)):
        if h.setdefault(a, b) != b:
            return None
    values = tuple(h[i] for i in range(k))
    if any(b < a for a, b in zip(values, values[1:])):
        return None
    return values


def _compose(g, f):
    return Arrow(f.source, g.target, tuple(g.data[v] for v in f.data))


def completion_category(inst: SquareInstance, max_k: int | None = None) -> FinCat:
    """Skeletal completion category with |Y| <= max_k (default |Y0| + |X|)."""
    objects = completion_objects(inst, max_k)
    by_size: dict[int, list] = {}
    for ob in objects:
        by_size.setdefault(ob[0], []).append(ob)
    homs = {}
    for src in objects:
        k, beta, tp = src
        for k2, targets in by_size.items():
            hs = list(_monotone(k, k2))
            for tgt in targets:
                _, beta2, tp2 = tgt
                homs[(src, tgt)] = [
                    Arrow(src, tgt, h)
                    for h in hs
                    if all(h[b] == b2 for b, b2 in zip(beta, beta2)) and all(h[t] == t2 for t, t2 in zip(tp, tp2))
                ]
    identities = {ob: Arrow(ob, ob, tuple(range(ob[0]))) for ob in objects}
    return FinCat(objects, homs, identities, _compose, name="completions")


def surjective_completion_category(inst: SquareInstance) -> FinCat:
    """Full subcategory on squares where Y0 and X jointly cover Y; it is a poset."""
    objects = [ob for ob in completion_objects(inst) if is_jointly_surjective(ob)]
    homs = {}
    for src in objects:
        for tgt in objects:
            h = _forced_map(src, tgt)
            homs[(src, tgt)] = [] if h is None else [Arrow(src, tgt, h)]
    identities = {ob: Arrow(ob, ob, tuple(range(ob[0]))) for ob in objects}
    return FinCat(objects, homs, identities, _compose, name="surjective completions")


def image_square(ob: tuple) -> tuple[tuple, tuple[int, ...]]:
    """Replace Y by the image of Y0 + X; returns the new square and its inclusion into Y."""
    k, beta, tp = ob
    image = sorted(set(beta) | set(tp))
    rank = {v: i for i, v in enumerate(image)}
    return (len(image), tuple(rank[b] for b in beta), tuple(rank[t] for t in tp)), tuple(image)


def check_image_coreflection(inst: SquareInstance, max_k: int | None = None) -> list[dict]:
    """Composing with the image inclusion is a bijection Hom(c', image(c)) -> Hom(c', c).

    Checked for every jointly surjective c' and every square c with |Y| <= max_k.
    Hom-sets out of a jointly surjective square have at most one element, so the
    map is a bijection when the two sides are simultaneously empty or not and
    the composite is the morphism into c.
    """
    if max_k is None:
        max_k = inst.y0 + inst.x
    witnesses = []
    objects = completion_objects(inst, max_k)
    surjective = [ob for ob in objects if is_jointly_surjective(ob)]
    for c in objects:
        r, incl = image_square(c)
        if not is_jointly_surjective(r) or tuple(incl[v] for v in r[2]) != c[2] or tuple(incl[v] for v in r[1]) != c[1]:
            witnesses.append({"square": repr(c), "problem": "image is not a jointly surjective factorization"})
            continue
        for c2 in surjective:
            into_r = _forced_map(c2, r)
            into_c = _forced_map(c2, c)
            composite = None if into_r is None else tuple(incl[v] for v in into_r)
            if composite != into_c:
                witnesses.append({"square": repr(c), "test": repr(c2)})
    return witnesses


def completion_betti(inst: SquareInstance, d: int = 2, budget: int | None = None) -> BettiSummary:
    """Betti numbers of the completion category, computed on its jointly surjective part."""
    return nerve_betti(surjective_completion_category(inst), d, budget)
