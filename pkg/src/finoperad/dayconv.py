"""Day convolution of finite presheaves, free commutative monoids, and coproducts of commutative monoids.

A presheaf on C is a SetFunctor on ``C.op()``. For a strict monoidal C the
convolution is the left Kan extension of the external product F x G along
the tensor, computed with ``fincat.left_kan``. ``coend_oracle`` recomputes
the same sets from the coend formula by a graph search, without Kan
extensions, as an independent check.
"""
from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass

from .errors import CheckFailed
from .fincat.colimits import LeftKan
from .fincat.core import Arrow, FinCat, Functor, NatTrans, SetFunctor, product_category, representable
from .fincat.monoidal import FinMonoidalCat
from .monoids import AssocMonoid, CommMonoid, all_assoc_monoids, all_comm_monoids, homomorphisms


# ---------------------------------------------------------------- presheaves

class DayContext:
    """Cached op-categories and tensor functors for one monoidal category."""

    def __init__(self, M: FinMonoidalCat):
        self.M = M
        self.C = M.base
        self.Cop = M.base.op()
        self.P2 = product_category(self.Cop, self.Cop, name="Cop^2")
        self.P3 = product_category(self.P2, self.Cop, name="Cop^3")
        t, tm = M.tensor_obj, M.tensor_mor
        self.T2 = Functor(self.P2, self.Cop, lambda ab: t(*ab), lambda fg: tm(*fg), name="tensor")
        self.T3 = Functor(
            self.P3,
            self.Cop,
            lambda abc: t(t(*abc[0]), abc[1]),
            lambda fgh: tm(tm(*fgh[0]), fgh[1]),
            name="tensor3",
        )

    def presheaf(self, carriers, actions, name: str = "") -> SetFunctor:
        return SetFunctor(self.Cop, carriers, actions, name=name)

    def yoneda(self, a) -> SetFunctor:
        """Hom(-, a) as a presheaf; its elements are morphisms into a."""
        return representable(self.Cop, a)

    def unit_presheaf(self) -> SetFunctor:
        return self.yoneda(self.M.unit)


def external_product(base: FinCat, X: SetFunctor, Y: SetFunctor) -> SetFunctor:
    """(X x Y)(a, b) = X(a) x Y(b) on a product category; element (i, j) has index i * |Y(b)| + j."""

    def carrier(ab):
        return tuple(itertools.product(X.carrier(ab[0]), Y.carrier(ab[1])))

    def act(fg):
        f, g = fg
        xf, yg = X.act(f), Y.act(g)
        b2 = base.target(fg)[1]
        return tuple(xf[i] * Y.size(b2) + yg[j] for i in range(len(xf)) for j in range(len(yg)))

    return SetFunctor(base, {ab: carrier(ab) for ab in base.objects}, act, name=f"{X.name}x{Y.name}")


@dataclass
class Convolution:
    """F (*) G with the Kan extension that produced it."""

    lan: LeftKan
    F: SetFunctor
    G: SetFunctor

    @property
    def presheaf(self) -> SetFunctor:
        return self.lan.functor

    def class_of(self, c, a, b, h, i: int, j: int) -> int:
        """The class of (x_i, y_j, h: c -> a(x)b)."""
        return self.lan.class_of(c, (a, b), h, i * self.G.size(b) + j)


def day_convolve(ctx: DayContext, F: SetFunctor, G: SetFunctor) -> Convolution:
    X = external_product(ctx.P2, F, G)
    return Convolution(LeftKan(ctx.T2, X), F, G)


def coend_oracle(ctx: DayContext, F: SetFunctor, G: SetFunctor, c) -> tuple[dict, int]:
    """Classes of the coend of F(a) x G(b) x Hom(c, a(x)b) by breadth-first search.

    Returns (class of each (a, b, i, j, h), number of classes). Generating
    relation: for f: a' -> a, g: b' -> b and h: c -> a'(x)b',
    (F(f) x_i, G(g) y_j, h) ~ (x_i, y_j, (f(x)g) . h).
    """
    C, M = ctx.C, ctx.M
    nodes = [
        (a, b, i, j, h)
        for a in C.objects
        for b in C.objects
        for i in range(F.size(a))
        for j in range(G.size(b))
        for h in C.hom(c, M.tensor_obj(a, b))
    ]
    adjacency: dict = {v: [] for v in nodes}
    for a2, a in itertools.product(C.objects, repeat=2):
        for b2, b in itertools.product(C.objects, repeat=2):
            for f in C.hom(a2, a):
                for g in C.hom(b2, b):
                    Ff, Gg, fg = F.act(f), G.act(g), M.tensor_mor(f, g)
                    for h in C.hom(c, M.tensor_obj(a2, b2)):
                        moved = C.compose(fg, h)
                        for i in range(F.size(a)):
                            for j in range(G.size(b)):
                                left, right = (a2, b2, Ff[i], Gg[j], h), (a, b, i, j, moved)
                                adjacency[left].append(right)
                                adjacency[right].append(left)
    labels: dict = {}
    count = 0
    for v in nodes:
        if v in labels:
            continue
        labels[v] = count
        queue = deque([v])
        while queue:
            w = queue.popleft()
            for u in adjacency[w]:
                if u not in labels:
                    labels[u] = count
                    queue.append(u)
        count += 1
    return labels, count


def compare_with_oracle(ctx: DayContext, conv: Convolution) -> list[dict]:
    """The evident map from oracle classes to convolution classes is a bijection compatible with the actions."""
    C = ctx.C
    witnesses = []
    tables = {}
    for c in C.objects:
        labels, count = coend_oracle(ctx, conv.F, conv.G, c)
        image: list = [None] * count
        for (a, b, i, j, h), k in labels.items():
            target = conv.class_of(c, a, b, h, i, j)
            if image[k] is None:
                image[k] = target
            elif image[k] != target:
                witnesses.append({"object": repr(c), "reason": "oracle class splits"})
                break
        if sorted(x for x in image if x is not None) != list(range(conv.presheaf.size(c))):
            witnesses.append({"object": repr(c), "reason": "not a bijection", "sizes": [count, conv.presheaf.size(c)]})
        tables[c] = labels
    if witnesses:
        return witnesses
    # the presheaf action on k: c2 -> c is precomposition
    for k in C.morphisms():
        c2, c = C.source(k), C.target(k)
        act = conv.presheaf.act(k)
        for (a, b, i, j, h) in tables[c]:
            if act[conv.class_of(c, a, b, h, i, j)] != conv.class_of(c2, a, b, C.compose(h, k), i, j):
                witnesses.append({"morphism": repr(k), "reason": "action differs from precomposition"})
                break
    return witnesses


def _iso_report(beta: NatTrans) -> list[dict]:
    witnesses = beta.validate()
    if not witnesses and not beta.is_isomorphism():
        sizes = {repr(a): [beta.source.size(a), beta.target.size(a)] for a in beta.source.base.objects}
        witnesses.append({"reason": "not bijective", "sizes": sizes})
    return witnesses


def left_unitor(ctx: DayContext, G: SetFunctor) -> tuple[NatTrans, list[dict]]:
    """y(I) (*) G -> G, [(x: a -> I, y, h)] -> G((x (x) id) . h)(y)."""
    M, C = ctx.M, ctx.C
    unit = ctx.unit_presheaf()
    conv = day_convolve(ctx, unit, G)

    def component(ab):
        a, b = ab
        return [G.act(M.tensor_mor(x, C.identity(b)))[j] for x in unit.carrier(a) for j in range(G.size(b))]

    return _factor(conv, G, ctx, component)


def right_unitor(ctx: DayContext, F: SetFunctor) -> tuple[NatTrans, list[dict]]:
    M, C = ctx.M, ctx.C
    unit = ctx.unit_presheaf()
    conv = day_convolve(ctx, F, unit)

    def component(ab):
        a, b = ab
        return [F.act(M.tensor_mor(C.identity(a), y))[i] for i in range(F.size(a)) for y in unit.carrier(b)]

    return _factor(conv, F, ctx, component)


def _factor(conv: Convolution, Y: SetFunctor, ctx: DayContext, component) -> tuple[NatTrans, list[dict]]:
    alpha = NatTrans(conv.lan.X, _restricted(Y, ctx.T2), {ab: component(ab) for ab in ctx.P2.objects})
    witnesses = alpha.validate()
    if witnesses:
        return None, [dict(w, stage="component") for w in witnesses]
    try:
        beta = conv.lan.factor(Y, alpha)
    except CheckFailed as exc:
        return None, exc.witnesses
    return beta, _iso_report(beta)


def _restricted(Y: SetFunctor, T: Functor) -> SetFunctor:
    from .fincat.core import restrict

    return restrict(Y, T)


def yoneda_comparison(ctx: DayContext, a, b) -> tuple[NatTrans, list[dict]]:
    """y(a) (*) y(b) -> y(a (x) b), [(x, y, h)] -> (x (x) y) . h."""
    M = ctx.M
    ya, yb = ctx.yoneda(a), ctx.yoneda(b)
    yab = ctx.yoneda(M.tensor_obj(a, b))
    conv = day_convolve(ctx, ya, yb)
    index = {c: {h: k for k, h in enumerate(yab.carrier(c))} for c in ctx.C.objects}

    def component(pair):
        a2, b2 = pair
        target = index[M.tensor_obj(a2, b2)]
        return [target[M.tensor_mor(x, y)] for x in ya.carrier(a2) for y in yb.carrier(b2)]

    return _factor(conv, yab, ctx, component)


def triple_convolution(ctx: DayContext, F, G, H) -> LeftKan:
    """Left Kan extension of F x G x H along the threefold tensor."""
    X = external_product(ctx.P3, external_product(ctx.P2, F, G), H)
    return LeftKan(ctx.T3, X)


def associator_check(ctx: DayContext, F, G, H) -> tuple[dict, list[dict]]:
    """Both bracketings map isomorphically onto the threefold convolution.

    Returns ({"left": beta_left, "right": beta_right}, witnesses).
    """
    M, C = ctx.M, ctx.C
    T = triple_convolution(ctx, F, G, H)
    FG = day_convolve(ctx, F, G)
    left = day_convolve(ctx, FG.presheaf, H)
    GH = day_convolve(ctx, G, H)
    right = day_convolve(ctx, F, GH.presheaf)

    def triple_index(a, b, c, i, j, k):
        return (i * G.size(b) + j) * H.size(c) + k

    def left_component(ec):
        e, c = ec
        out = []
        for rep in FG.presheaf.carrier(e):
            (a, b), h, (x, y) = rep
            i, j = F.carrier(a).index(x), G.carrier(b).index(y)
            hh = M.tensor_mor(h, C.identity(c))
            for k in range(H.size(c)):
                out.append(T.class_of(M.tensor_obj(e, c), ((a, b), c), hh, triple_index(a, b, c, i, j, k)))
        return out

    def right_component(ae):
        a, e = ae
        out = []
        for i in range(F.size(a)):
            for rep in GH.presheaf.carrier(e):
                (b, c), h, (y, z) = rep
                j, k = G.carrier(b).index(y), H.carrier(c).index(z)
                hh = M.tensor_mor(C.identity(a), h)
                out.append(T.class_of(M.tensor_obj(a, e), ((a, b), c), hh, triple_index(a, b, c, i, j, k)))
        return out

    results, witnesses = {}, []
    for side, conv, component in (("left", left, left_component), ("right", right, right_component)):
        beta, bad = _factor(conv, T.functor, ctx, component)
        results[side] = beta
        witnesses += [dict(w, bracketing=side) for w in bad]
    return results, witnesses


# ---------------------------------------------------------------- random strict monoidal categories

def ordered_monoid_category(monoid: AssocMonoid, leq: set, scalars: CommMonoid, name: str = "") -> FinMonoidalCat:
    """Objects: elements of ``monoid``; Hom(a, b) = scalars when (a, b) in ``leq``.

    ``leq`` must be a preorder compatible with multiplication. Composition and
    tensor of morphisms both multiply scalars.
    """
    objects = list(range(len(monoid)))
    homs = {
        (a, b): [Arrow(a, b, s) for s in range(len(scalars))] if (a, b) in leq else []
        for a in objects
        for b in objects
    }
    identities = {a: Arrow(a, a, scalars.unit) for a in objects}

    def compose(g, f):
        return Arrow(f.source, g.target, scalars.mul(g.data, f.data))

    C = FinCat(objects, homs, identities, compose, name=name or "ordered")

    def tensor_mor(f, g):
        return Arrow(monoid.mul(f.source, g.source), monoid.mul(f.target, g.target), scalars.mul(f.data, g.data))

    return FinMonoidalCat(C, monoid.mul, tensor_mor, monoid.unit, name=name or "ordered")


def compatible_closure(monoid: AssocMonoid, pairs) -> set:
    """Smallest preorder containing ``pairs`` that is stable under multiplication on both sides."""
    n = len(monoid)
    rel = {(a, a) for a in range(n)} | set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c in range(n):
                for p in ((monoid.mul(c, a), monoid.mul(c, b)), (monoid.mul(a, c), monoid.mul(b, c))):
                    if p not in rel:
                        rel.add(p)
                        changed = True
        for (a, b), (b2, c) in itertools.product(list(rel), repeat=2):
            if b == b2 and (a, c) not in rel:
                rel.add((a, c))
                changed = True
    return rel


def random_monoidal_category(seed: int, max_objects: int = 4, max_scalars: int = 2) -> FinMonoidalCat:
    """A seeded strict monoidal category with at most ``max_objects`` objects."""
    rng = random.Random(seed)
    monoid = rng.choice([A for A in all_assoc_monoids(max_objects)])
    n = len(monoid)
    pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randrange(n + 1))]
    leq = compatible_closure(monoid, pairs)
    scalars = rng.choice([S for S in all_comm_monoids(max_scalars)])
    return ordered_monoid_category(monoid, leq, scalars, name=f"random{seed}")


def random_presheaf(ctx: DayContext, rng: random.Random, max_size: int = 2, node_budget: int = 20_000) -> SetFunctor:
    """A presheaf with carriers of size <= max_size, found by backtracking on random carrier sizes.

    Falls back to a one-point constant presheaf when the budget runs out.
    """
    Cop = ctx.Cop
    objects = list(Cop.objects)
    morphisms = [f for f in Cop.morphisms() if not Cop.is_identity(f)]
    pairs = list(Cop.composable_pairs())
    for _ in range(20):
        sizes = {a: rng.randint(1, max_size) for a in objects}
        table: dict = {Cop.identity(a): tuple(range(sizes[a])) for a in objects}
        nodes = [0]

        def consistent() -> bool:
            for f, g in pairs:
                gf = Cop.compose(g, f)
                if f in table and g in table and gf in table:
                    if tuple(table[g][x] for x in table[f]) != table[gf]:
                        return False
            return True

        def go(k: int) -> bool:
            nodes[0] += 1
            if nodes[0] > node_budget:
                return False
            if k == len(morphisms):
                return True
            f = morphisms[k]
            choices = list(itertools.product(range(sizes[Cop.target(f)]), repeat=sizes[Cop.source(f)]))
            rng.shuffle(choices)
            for choice in choices:
                table[f] = choice
                if consistent() and go(k + 1):
                    return True
            del table[f]
            return False

        if go(0):
            carriers = {a: tuple(f"p{i}" for i in range(sizes[a])) for a in objects}
            return ctx.presheaf(carriers, dict(table), name="random")
    return ctx.presheaf({a: ("p0",) for a in objects}, lambda f: (0,), name="point")


def day_battery(seed: int, presheaf_size: int = 2) -> dict[str, list[dict]]:
    """Unit, associativity, Yoneda and oracle checks on one seeded instance."""
    M = random_monoidal_category(seed)
    report: dict[str, list[dict]] = {"monoidal category": M.validate()}
    if report["monoidal category"]:
        return report
    ctx = DayContext(M)
    rng = random.Random(seed)
    F, G, H = (random_presheaf(ctx, rng, presheaf_size) for _ in range(3))
    report["left unit"] = left_unitor(ctx, G)[1]
    report["right unit"] = right_unitor(ctx, F)[1]
    report["associativity"] = associator_check(ctx, F, G, H)[1]
    report["coend oracle"] = compare_with_oracle(ctx, day_convolve(ctx, F, G))
    yoneda = []
    for a, b in itertools.product(ctx.C.objects, repeat=2):
        yoneda += [dict(w, objects=[a, b]) for w in yoneda_comparison(ctx, a, b)[1]]
    report["monoidal Yoneda"] = yoneda
    return report


# ---------------------------------------------------------------- free commutative monoids

@dataclass(frozen=True)
class FreeCommMonoid:
    """Multisets over ``generators``, stored as sorted tuples of generator indices."""

    generators: tuple

    unit: tuple = ()

    def mul(self, s: tuple, t: tuple) -> tuple:
        return tuple(sorted(s + t))

    def symmetric_power(self, n: int) -> list[tuple]:
        """Sym^n: the multisets of size n."""
        return list(itertools.combinations_with_replacement(range(len(self.generators)), n))

    def expected_count(self, n: int) -> int:
        k = len(self.generators)
        return math.comb(k + n - 1, n) if k else int(n == 0)

    def elements(self, max_degree: int) -> list[tuple]:
        return [s for n in range(max_degree + 1) for s in self.symmetric_power(n)]

    def to_json(self, s: tuple) -> list:
        return [[self.generators[g], s.count(g)] for g in sorted(set(s))]

    def validate(self, max_degree: int = 3) -> list[dict]:
        out = []
        els = self.elements(max_degree)
        for s in els:
            if self.mul(self.unit, s) != s or self.mul(s, self.unit) != s:
                out.append({"law": "unit", "element": self.to_json(s)})
        for s, t in itertools.product(els, repeat=2):
            if self.mul(s, t) != self.mul(t, s):
                out.append({"law": "commutativity", "elements": [self.to_json(s), self.to_json(t)]})
        for s, t, u in itertools.product(self.elements(max(1, max_degree // 2)), repeat=3):
            if self.mul(self.mul(s, t), u) != self.mul(s, self.mul(t, u)):
                out.append({"law": "associativity", "elements": [self.to_json(x) for x in (s, t, u)]})
        return out


def free_comm_monoid(X) -> FreeCommMonoid:
    return FreeCommMonoid(tuple(X))


def extend(S: FreeCommMonoid, A: CommMonoid, values: tuple[int, ...], s: tuple) -> int:
    return A.product(values[g] for g in s)


def search_homomorphisms(S: FreeCommMonoid, A: CommMonoid, max_degree: int):
    """Every multiplicative, unit-preserving map Sym(X)_{<= max_degree} -> A, by backtracking.

    Values are assigned element by element (by degree) and pruned whenever
    some product of assigned elements of total degree <= max_degree disagrees.
    """
    els = S.elements(max_degree)
    index = {s: i for i, s in enumerate(els)}
    products = [[] for _ in els]  # constraints that become checkable once element k is assigned
    for s, t in itertools.product(els, repeat=2):
        st = S.mul(s, t)
        if st in index:
            k = max(index[s], index[t], index[st])
            products[k].append((index[s], index[t], index[st]))
    value = [None] * len(els)

    def go(k: int):
        if k == len(els):
            yield tuple(value)
            return
        choices = [A.unit] if k == 0 else range(len(A))
        for a in choices:
            value[k] = a
            if all(A.mul(value[i], value[j]) == value[ij] for i, j, ij in products[k]):
                yield from go(k + 1)
        value[k] = None

    yield from go(0)


def adjunction_check(X, A: CommMonoid, max_degree: int | None = None) -> dict:
    """Homomorphisms Sym(X) -> A correspond to functions X -> A by restriction to generators.

    Both sides are built independently: functions by enumeration, and
    homomorphisms (on multisets of degree <= max_degree, default 3) by
    ``search_homomorphisms``. Each function is also extended by folding over
    every ordering of each multiset, which must agree (this is where
    commutativity is used).
    """
    S = free_comm_monoid(X)
    k = len(S.generators)
    max_degree = 3 if max_degree is None else max_degree
    bad = A.validate()
    if bad:
        raise CheckFailed("not a commutative monoid", bad)
    witnesses = []
    functions = list(itertools.product(range(len(A)), repeat=k))
    homs = list(search_homomorphisms(S, A, max_degree))
    els = S.elements(max_degree)
    restricted = {}
    for h in homs:
        restricted.setdefault(tuple(h[els.index((g,))] for g in range(k)), []).append(h)
    for f in functions:
        ext = []
        for s in els:
            folds = {A.product(p) for p in itertools.permutations([f[g] for g in s])}
            if len(folds) != 1:
                witnesses.append({"reason": "extension depends on order", "function": list(f), "multiset": S.to_json(s)})
            ext.append(min(folds))
        found = restricted.get(f, [])
        if len(found) != 1 or found[0] != tuple(ext):
            witnesses.append({"reason": "restriction is not bijective at this function", "function": list(f),
                              "homomorphisms": len(found)})
    for s in els:
        if len(S.symmetric_power(len(s))) != S.expected_count(len(s)):
            witnesses.append({"reason": "symmetric power count", "degree": len(s)})
    return {"functions": len(functions), "homomorphisms": len(homs), "passed": not witnesses, "witnesses": witnesses}


# ---------------------------------------------------------------- coproducts

@dataclass
class Coproduct:
    monoid: CommMonoid
    inl: tuple[int, ...]
    inr: tuple[int, ...]


def comm_monoid_coproduct(A: CommMonoid, B: CommMonoid) -> Coproduct:
    """A x B with pointwise product; a -> (a, 1), b -> (1, b)."""
    kb = len(B)
    pairs = list(itertools.product(range(len(A)), range(kb)))
    elements = tuple((A.elements[a], B.elements[b]) for a, b in pairs)
    table = tuple(tuple(A.mul(a, a2) * kb + B.mul(b, b2) for a2, b2 in pairs) for a, b in pairs)
    P = CommMonoid(elements, table, A.unit * kb + B.unit, f"{A.name}+{B.name}")
    return Coproduct(P, tuple(a * kb + B.unit for a in range(len(A))), tuple(A.unit * kb + b for b in range(kb)))


def hom_search(A: AssocMonoid, B: AssocMonoid):
    """Unit-preserving multiplicative maps A -> B by backtracking with pruning."""
    n = len(A)
    order = [A.unit] + [a for a in range(n) if a != A.unit]
    pos = {a: i for i, a in enumerate(order)}
    checks = [[] for _ in range(n)]
    for a, b in itertools.product(range(n), repeat=2):
        ab = A.mul(a, b)
        checks[max(pos[a], pos[b], pos[ab])].append((a, b, ab))
    value: dict = {}

    def go(k: int):
        if k == n:
            yield tuple(value[a] for a in range(n))
            return
        x = order[k]
        for y in ([B.unit] if k == 0 else range(len(B))):
            value[x] = y
            if all(B.mul(value[a], value[b]) == value[ab] for a, b, ab in checks[k]):
                yield from go(k + 1)
        del value[x]

    yield from go(0)


def universal_check(A: CommMonoid, B: CommMonoid, bound: int = 4) -> dict:
    """Every pair of homomorphisms out of A and B factors uniquely through the coproduct.

    Test monoids are all commutative monoids of order <= bound. Homomorphisms
    out of the coproduct are found by search, not from the pairing formula.
    """
    cp = comm_monoid_coproduct(A, B)
    witnesses, pairs = [], 0
    for T in all_comm_monoids(bound):
        from_a, from_b = homomorphisms(A, T), homomorphisms(B, T)
        factor_count: dict = {}
        for h in hom_search(cp.monoid, T):
            key = (tuple(h[i] for i in cp.inl), tuple(h[i] for i in cp.inr))
            factor_count[key] = factor_count.get(key, 0) + 1
        for f in from_a:
            for g in from_b:
                pairs += 1
                if factor_count.get((f, g), 0) != 1:
                    witnesses.append({"test_monoid": T.name, "f": list(f), "g": list(g),
                                      "factorizations": factor_count.get((f, g), 0)})
        extra = set(factor_count) - {(f, g) for f in from_a for g in from_b}
        if extra:
            witnesses.append({"test_monoid": T.name, "reason": "restriction is not a homomorphism pair"})
    return {"pairs": pairs, "passed": not witnesses, "witnesses": witnesses}


def swap_check(A: CommMonoid, B: CommMonoid) -> list[dict]:
    """(a, b) -> (b, a) is an isomorphism A + B -> B + A exchanging the injections."""
    ab, ba = comm_monoid_coproduct(A, B), comm_monoid_coproduct(B, A)
    ka, kb = len(A), len(B)
    swap = tuple((x % kb) * ka + x // kb for x in range(ka * kb))
    out = []
    P, Q = ab.monoid, ba.monoid
    if sorted(swap) != list(range(len(Q))):
        out.append({"reason": "swap is not a bijection"})
    if any(swap[P.mul(x, y)] != Q.mul(swap[x], swap[y]) for x in range(len(P)) for y in range(len(P))):
        out.append({"reason": "swap is not multiplicative"})
    if tuple(swap[i] for i in ab.inl) != ba.inr or tuple(swap[i] for i in ab.inr) != ba.inl:
        out.append({"reason": "swap does not exchange the injections"})
    return out
