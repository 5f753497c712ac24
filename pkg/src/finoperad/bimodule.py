"""Bimodules over finite monoids, presented over pairs of simplices.

A bimodule (A, B, M) becomes three functors on pairs ([m], [n]):

    M([m], [n]) = A^m x M x B^n,   A([m], [n]) = A^m,   B([m], [n]) = B^n,

with u: M -> A and v: M -> B the evident projections. A pair of maps
(f, g) acts through the gap functor applied to the join f * g, multiplying
along each fiber in order; the middle fiber uses the two actions.

``prebimodule_check`` tests the product decompositions that characterize
such data without looking at how it was built, and ``extract_bimodule``
reads (A, B, M) back.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from . import finseg, segal, simplex
from .errors import CheckFailed, InvalidInput
from .monoids import AssocMonoid
from .segal import delta_composition_index, encode, simplex_maps
from .simplex import SimplexMap


@dataclass(frozen=True)
class Bimodule:
    """A left A-action and a right B-action on a finite set, as index tables."""

    left: AssocMonoid
    right: AssocMonoid
    elements: tuple
    left_action: tuple[tuple[int, ...], ...]  # left_action[a][x] = a.x
    right_action: tuple[tuple[int, ...], ...]  # right_action[x][b] = x.b
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        k = len(self.elements)
        la = tuple(tuple(int(v) for v in row) for row in self.left_action)
        ra = tuple(tuple(int(v) for v in row) for row in self.right_action)
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "left_action", la)
        object.__setattr__(self, "right_action", ra)
        if len(la) != len(self.left) or any(len(row) != k for row in la):
            raise InvalidInput(f"left_action: expected a {len(self.left)} x {k} table")
        if len(ra) != k or any(len(row) != len(self.right) for row in ra):
            raise InvalidInput(f"right_action: expected a {k} x {len(self.right)} table")
        if any(not 0 <= v < k for row in la + ra for v in row):
            raise InvalidInput("action tables: entry outside the element range")

    def validate(self) -> list[dict]:
        A, B, la, ra = self.left, self.right, self.left_action, self.right_action
        out = [dict(w, monoid="left") for w in A.validate()] + [dict(w, monoid="right") for w in B.validate()]
        xs = range(len(self.elements))
        for x in xs:
            if la[A.unit][x] != x:
                out.append({"law": "left unit", "element": self.elements[x]})
            if ra[x][B.unit] != x:
                out.append({"law": "right unit", "element": self.elements[x]})
        for a, b, x in itertools.product(range(len(A)), range(len(A)), xs):
            if la[A.mul(a, b)][x] != la[a][la[b][x]]:
                out.append({"law": "left associativity", "elements": [A.elements[a], A.elements[b], self.elements[x]]})
        for x, a, b in itertools.product(xs, range(len(B)), range(len(B))):
            if ra[x][B.mul(a, b)] != ra[ra[x][a]][b]:
                out.append({"law": "right associativity", "elements": [self.elements[x], B.elements[a], B.elements[b]]})
        for a, x, b in itertools.product(range(len(A)), xs, range(len(B))):
            if ra[la[a][x]][b] != la[a][ra[x][b]]:
                out.append({"law": "actions commute", "elements": [A.elements[a], self.elements[x], B.elements[b]]})
        return out

    def to_json(self) -> dict:
        return {
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "elements": list(self.elements),
            "left_action": [[self.elements[v] for v in row] for row in self.left_action],
            "right_action": [[self.elements[v] for v in row] for row in self.right_action],
        }

    @classmethod
    def from_json(cls, data) -> "Bimodule":
        for key in ("left", "right", "elements", "left_action", "right_action"):
            if not isinstance(data, dict) or key not in data:
                raise InvalidInput(f"bimodule: missing field '{key}'")
        elements = tuple(data["elements"])
        index = {x: i for i, x in enumerate(elements)}
        try:
            la = tuple(tuple(index[v] for v in row) for row in data["left_action"])
            ra = tuple(tuple(index[v] for v in row) for row in data["right_action"])
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"bimodule: action names an unknown element {exc}") from None
        return cls(AssocMonoid.from_json(data["left"]), AssocMonoid.from_json(data["right"]), elements, la, ra)


def regular_bimodule(A: AssocMonoid) -> Bimodule:
    """A acting on itself from both sides."""
    table = A.table
    return Bimodule(A, A, A.elements, table, table, f"regular({A.name})")


def trivial_action_bimodule(A: AssocMonoid, B: AssocMonoid, size: int) -> Bimodule:
    n = range(size)
    return Bimodule(A, B, tuple(f"x{i}" for i in n), tuple(tuple(n) for _ in range(len(A))),
                    tuple((x,) * len(B) for x in n), "trivial")


def left_regular_bimodule(A: AssocMonoid, B: AssocMonoid) -> Bimodule:
    """A acting on itself on the left, B acting trivially on the right."""
    return Bimodule(A, B, A.elements, A.table, tuple((x,) * len(B) for x in range(len(A))), "left-regular")


def right_regular_bimodule(A: AssocMonoid, B: AssocMonoid) -> Bimodule:
    return Bimodule(A, B, B.elements, tuple(tuple(range(len(B))) for _ in range(len(A))), B.table, "right-regular")


def random_bimodule(A: AssocMonoid, B: AssocMonoid, size: int, seed: int, tries: int = 2000) -> Bimodule | None:
    """A bimodule on ``size`` points found by random search over endomorphism images, or None."""
    rng = random.Random(seed)
    ends = list(itertools.product(range(size), repeat=size))
    compose = {(p, q): tuple(p[q[i]] for i in range(size)) for p in ends for q in ends}
    ident = tuple(range(size))

    def actions(monoid: AssocMonoid, op: bool):
        # a homomorphism into the endomorphisms, by random choice on non-units then validation
        for _ in range(tries):
            img = [ident if a == monoid.unit else rng.choice(ends) for a in range(len(monoid))]
            ok = all(
                img[monoid.mul(a, b)] == (compose[(img[b], img[a])] if op else compose[(img[a], img[b])])
                for a in range(len(monoid))
                for b in range(len(monoid))
            )
            if ok:
                yield img

    for left in itertools.islice(actions(A, False), 20):
        for right in itertools.islice(actions(B, True), 20):
            if all(left[a][right[b][x]] == right[b][left[a][x]] for a in range(len(A)) for b in range(len(B)) for x in range(size)):
                la = tuple(tuple(left[a]) for a in range(len(A)))
                ra = tuple(tuple(right[b][x] for b in range(len(B))) for x in range(size))
                return Bimodule(A, B, tuple(f"x{i}" for i in range(size)), la, ra, f"random{seed}")
    return None


# ---------------------------------------------------------------- functors on pairs of simplices

def pair_maps(a: tuple[int, int], b: tuple[int, int]) -> list[tuple[SimplexMap, SimplexMap]]:
    return list(itertools.product(simplex_maps(a[0], b[0]), simplex_maps(a[1], b[1])))


@dataclass
class BisimplicialFinSet:
    """Contravariant on pairs of simplices up to ([N], [N]).

    ``actions[(f, g)]`` maps X(m', n') -> X(m, n) for f: [m] -> [m'], g: [n] -> [n'].
    """

    N: int
    sizes: dict
    actions: dict

    def objects(self) -> list[tuple[int, int]]:
        return [(m, n) for m in range(self.N + 1) for n in range(self.N + 1)]

    def act(self, f: SimplexMap, g: SimplexMap) -> np.ndarray:
        return self.actions[(f, g)]

    def validate(self) -> list[dict]:
        witnesses = []
        for m, n in self.objects():
            if not np.array_equal(self.act(simplex.identity(m), simplex.identity(n)), np.arange(self.sizes[(m, n)])):
                witnesses.append({"law": "identity", "object": [m, n]})
        stacked = {
            (a, b): np.array([self.actions[p] for p in pair_maps(a, b)], dtype=np.int64).reshape(-1, self.sizes[b])
            for a in self.objects()
            for b in self.objects()
        }
        for a, b, c in itertools.product(self.objects(), repeat=3):
            C0 = delta_composition_index(a[0], b[0], c[0])
            C1 = delta_composition_index(a[1], b[1], c[1])
            width = len(simplex_maps(a[1], c[1]))
            index = (C0[:, None, :, None] * width + C1[None, :, None, :]).reshape(C0.shape[0] * C1.shape[0], -1)
            lhs = stacked[(a, b)][:, stacked[(b, c)]]
            rhs = stacked[(a, c)][index]
            if not np.array_equal(lhs, rhs):
                fi, gi, _ = np.argwhere(lhs != rhs)[0]
                first, second = pair_maps(a, b)[fi], pair_maps(b, c)[gi]
                witnesses.append({"law": "composition", "first": _pair_json(first), "second": _pair_json(second)})
        return witnesses


def _pair_json(p) -> list:
    return [simplex.to_json(p[0]), simplex.to_json(p[1])]


@dataclass
class PrebimoduleData:
    """Functors M, A, B on pairs of simplices with transformations u: M -> A and v: M -> B."""

    N: int
    M: BisimplicialFinSet
    A: BisimplicialFinSet
    B: BisimplicialFinSet
    u: dict
    v: dict

    def validate(self) -> list[dict]:
        out = []
        for label, X in (("M", self.M), ("A", self.A), ("B", self.B)):
            out += [dict(w, functor=label) for w in X.validate()]
        for label, Y, t in (("u", self.A, self.u), ("v", self.B, self.v)):
            for a in self.M.objects():
                for b in self.M.objects():
                    for p in pair_maps(a, b):
                        if not np.array_equal(Y.act(*p)[t[b]], t[a][self.M.act(*p)]):
                            out.append({"law": "naturality", "transformation": label, "map": _pair_json(p)})
        return out


def _mixed_products(radices: list[int], kinds: list[str], targets, bm: Bimodule) -> np.ndarray:
    """Act on a mixed-radix product of factors by multiplying each ordered fiber.

    ``kinds[i]`` is "a", "x" or "b" for source position i + 1. Each target is
    (kind, fiber) with the fiber a sequence of 1-based source positions; an
    empty A- or B-fiber gives that monoid's unit. Returns target codes.
    """
    digits = np.array(list(itertools.product(*(range(r) for r in radices))), dtype=np.int64).reshape(-1, len(radices))
    A = np.array(bm.left.table, dtype=np.int64).reshape(len(bm.left), len(bm.left))
    B = np.array(bm.right.table, dtype=np.int64).reshape(len(bm.right), len(bm.right))
    la = np.array(bm.left_action, dtype=np.int64).reshape(len(bm.left), len(bm.elements))
    ra = np.array(bm.right_action, dtype=np.int64).reshape(len(bm.elements), len(bm.right))
    code = np.zeros(digits.shape[0], dtype=np.int64)
    for kind, fiber in targets:
        if kind == "x":
            mid = [kinds[i - 1] for i in fiber].index("x")
            a = np.full(digits.shape[0], bm.left.unit, dtype=np.int64)
            for i in fiber[:mid]:
                a = A[a, digits[:, i - 1]]
            val = la[a, digits[:, fiber[mid] - 1]]
            for i in fiber[mid + 1 :]:
                val = ra[val, digits[:, i - 1]]
            radix = len(bm.elements)
        else:
            monoid, table = (bm.left, A) if kind == "a" else (bm.right, B)
            val = np.full(digits.shape[0], monoid.unit, dtype=np.int64)
            for i in fiber:
                val = table[val, digits[:, i - 1]]
            radix = len(monoid)
        code = code * radix + val
    return code


def bimodule_to_prebimodule(bm: Bimodule, N: int = 2) -> PrebimoduleData:
    """The functors A^m x M x B^n, A^m, B^n with their projections; ``bm`` is not validated."""
    ka, kb, kx = len(bm.left), len(bm.right), len(bm.elements)
    objects = [(m, n) for m in range(N + 1) for n in range(N + 1)]
    Ms = {(m, n): ka**m * kx * kb**n for m, n in objects}
    As = {(m, n): ka**m for m, n in objects}
    Bs = {(m, n): kb**n for m, n in objects}
    Mact, Aact, Bact = {}, {}, {}
    A_table = np.array(bm.left.table, dtype=np.int64)
    B_table = np.array(bm.right.table, dtype=np.int64)
    for (m, n), (m2, n2) in itertools.product(objects, repeat=2):
        kinds = ["a"] * m2 + ["x"] + ["b"] * n2
        radices = [ka] * m2 + [kx] + [kb] * n2
        for f, g in pair_maps((m, n), (m2, n2)):
            orders = simplex.phi(simplex.join(f, g)).orders
            targets = [("a" if j <= m else "x" if j == m + 1 else "b", o) for j, o in enumerate(orders, 1)]
            Mact[(f, g)] = _mixed_products(radices, kinds, targets, bm)
            Aact[(f, g)] = segal.grouped_products(A_table, bm.left.unit, m2, [[i - 1 for i in o] for o in simplex.phi(f).orders])
            Bact[(f, g)] = segal.grouped_products(B_table, bm.right.unit, n2, [[i - 1 for i in o] for o in simplex.phi(g).orders])
    u, v = {}, {}
    for m, n in objects:
        idx = np.arange(Ms[(m, n)])
        u[(m, n)] = idx // (kx * kb**n)
        v[(m, n)] = idx % (kb**n)
    return PrebimoduleData(
        N, BisimplicialFinSet(N, Ms, Mact), BisimplicialFinSet(N, As, Aact), BisimplicialFinSet(N, Bs, Bact), u, v
    )


# ---------------------------------------------------------------- the decomposition conditions

def _spine(X: BisimplicialFinSet, m: int, n: int, side: str) -> np.ndarray:
    """Columns X(edge_i, vertex 0) for the first side, X(vertex 0, edge_j) for the second."""
    if side == "left":
        cols = [X.act(simplex.edge(m, i), simplex.vertex(n, 0)) for i in range(1, m + 1)]
        count = X.sizes[(m, n)]
    else:
        cols = [X.act(simplex.vertex(m, 0), simplex.edge(n, j)) for j in range(1, n + 1)]
        count = X.sizes[(m, n)]
    if not cols:
        return np.zeros((count, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def _is_bijection(codes: np.ndarray, size: int) -> bool:
    return len(codes) == size and len(np.unique(codes)) == size


def _inert_sources(pm) -> list[int] | None:
    """For an inert map, the source of each target element in order; None otherwise."""
    if not finseg.classify(pm).inert:
        return None
    return [pm.fiber(j)[0] for j in range(1, pm.n + 1)]


def _convex_condition(X: BisimplicialFinSet, side: str) -> list[dict]:
    """Spine maps are bijective and maps convex on ``side`` act as the inert projections."""
    out = []
    coord = 0 if side == "left" else 1
    base = X.sizes[(1, 0)] if side == "left" else X.sizes[(0, 1)]
    for m, n in X.objects():
        k = (m, n)[coord]
        S = _spine(X, m, n, side)
        if not _is_bijection(encode(S, base), base**k) or X.sizes[(m, n)] != base**k:
            out.append({"object": [m, n], "reason": "spine map is not a bijection"})
    for a in X.objects():
        for b in X.objects():
            Sa, Sb = _spine(X, *a, side), _spine(X, *b, side)
            for p in pair_maps(a, b):
                if not simplex.is_convex(p[coord]):
                    continue
                sources = _inert_sources(simplex.phi(p[coord]).map)
                if sources is None:
                    out.append({"map": _pair_json(p), "reason": "gap image of a convex map is not inert"})
                    continue
                want = Sb[:, [i - 1 for i in sources]]
                if not np.array_equal(Sa[X.act(*p)], want):
                    out.append({"map": _pair_json(p), "reason": "not the projection onto the indicated factors"})
    return out


def _layout(m: int, n: int) -> tuple[list[int], int, list[int], list[dict]]:
    """Positions in <m + n + 1> of the left factors, the middle factor and the right factors."""
    problems = []
    left_incl, right_incl = simplex.join_inclusions(m, n)
    lefts = _inert_sources(simplex.phi(left_incl).map)
    rights = _inert_sources(simplex.phi(right_incl).map)
    middle = simplex.middle_marking(m, n).values[0]
    corner = simplex.join(simplex.vertex(m, m), simplex.vertex(n, 0))
    if simplex.phi(corner).map != finseg.collapse(m + n + 1, middle):
        problems.append({"object": [m, n], "reason": "the corner map does not collapse onto the marked factor"})
    if lefts is None or rights is None or sorted(lefts + [middle] + rights) != list(range(1, m + n + 2)):
        problems.append({"object": [m, n], "reason": "factor positions do not partition"})
        lefts, rights = list(range(1, m + 1)), list(range(m + 2, m + n + 2))
    return lefts, middle, rights, problems


def prebimodule_check(D: PrebimoduleData) -> dict[str, list[dict]]:
    """Set-level decomposition conditions; returns witnesses per condition (empty lists pass).

    * "functoriality": M, A, B are functors and u, v natural.
    * "shape": the factor layout of <m + n + 1> from the join and the gap functor.
    * "u and v inert": (spine . u, spine . v) maps M([m],[n]) onto A1^m x B1^n
      with every fiber of size |M([0],[0])|.
    * "corner map": adding the corner map M([m],[n]) -> M([0],[0]) makes that a bijection.
    * "left convex" / "right convex": A and B decompose by spines, and maps
      convex in their coordinate act as the inert projections.
    """
    report: dict[str, list[dict]] = {"functoriality": D.validate(), "shape": []}
    report["u and v inert"], report["corner map"] = [], []
    a1, b1, m0 = D.A.sizes[(1, 0)], D.B.sizes[(0, 1)], D.M.sizes[(0, 0)]
    for m, n in D.M.objects():
        lefts, middle, rights, problems = _layout(m, n)
        report["shape"] += problems
        if len(lefts) != m or len(rights) != n:
            report["shape"].append({"object": [m, n], "reason": "factor counts"})
        outer = np.concatenate(
            [_spine(D.A, m, n, "left")[D.u[(m, n)]], _spine(D.B, m, n, "right")[D.v[(m, n)]]], axis=1
        )
        outer_codes = _mixed(outer, [a1] * m + [b1] * n)
        counts = np.bincount(outer_codes, minlength=a1**m * b1**n)
        if len(counts) != a1**m * b1**n or np.any(counts != m0):
            report["u and v inert"].append({"object": [m, n], "fiber_sizes": sorted(set(counts.tolist()))})
        corner = D.M.act(simplex.vertex(m, m), simplex.vertex(n, 0))
        full = outer_codes * m0 + corner
        if not _is_bijection(full, a1**m * m0 * b1**n):
            report["corner map"].append({"object": [m, n]})
    report["left convex"] = _convex_condition(D.A, "left")
    report["right convex"] = _convex_condition(D.B, "right")
    return report


def _mixed(digits: np.ndarray, radices: list[int]) -> np.ndarray:
    code = np.zeros(digits.shape[0], dtype=np.int64)
    for i, r in enumerate(radices):
        code = code * r + digits[:, i]
    return code


def passed(report: dict) -> bool:
    return all(not w for w in report.values())


# ---------------------------------------------------------------- extraction and mutation

def _restrict_left(X: BisimplicialFinSet) -> segal.SimplicialFinSet:
    carriers = {m: tuple((i,) for i in range(X.sizes[(m, 0)])) for m in range(X.N + 1)}
    ident = simplex.identity(0)
    actions = {f: X.act(f, ident) for a in range(X.N + 1) for b in range(X.N + 1) for f in simplex_maps(a, b)}
    return segal.SimplicialFinSet(X.N, carriers, actions)


def _restrict_right(X: BisimplicialFinSet) -> segal.SimplicialFinSet:
    carriers = {n: tuple((i,) for i in range(X.sizes[(0, n)])) for n in range(X.N + 1)}
    ident = simplex.identity(0)
    actions = {g: X.act(ident, g) for a in range(X.N + 1) for b in range(X.N + 1) for g in simplex_maps(a, b)}
    return segal.SimplicialFinSet(X.N, carriers, actions)


def extract_bimodule(D: PrebimoduleData) -> Bimodule:
    """Read the monoids off A and B and the actions off M([1],[0]) and M([0],[1])."""
    if D.N < 2:
        raise InvalidInput(f"truncation {D.N} < 2")
    report = prebimodule_check(D)
    if not passed(report):
        raise CheckFailed("not a prebimodule", [dict(w, condition=k) for k, ws in report.items() for w in ws])
    A = segal.extract_monoid(_restrict_left(D.A))
    B = segal.extract_monoid(_restrict_right(D.B))
    m0 = D.M.sizes[(0, 0)]
    ident = simplex.identity(0)

    def action(m: int, n: int, multiply) -> np.ndarray:
        # code of (a_1..a_m, x, b_1..b_n), read through the decomposition
        a_code = _mixed(_spine(D.A, m, n, "left")[D.u[(m, n)]], [len(A)] * m)
        b_code = _mixed(_spine(D.B, m, n, "right")[D.v[(m, n)]], [len(B)] * n)
        codes = (a_code * m0 + D.M.act(simplex.vertex(m, m), simplex.vertex(n, 0))) * len(B) ** n + b_code
        inverse = np.empty(len(codes), dtype=np.int64)
        inverse[codes] = np.arange(len(codes))
        return D.M.act(*multiply)[inverse]

    # a.x: the map [0] * [0] -> [1] * [0] joining vertex 0 of [1] with [0]
    lx = action(1, 0, (simplex.vertex(1, 0), ident))
    xb = action(0, 1, (ident, simplex.vertex(1, 1)))
    la = tuple(tuple(int(lx[a * m0 + x]) for x in range(m0)) for a in range(len(A)))
    ra = tuple(tuple(int(xb[x * len(B) + b]) for b in range(len(B))) for x in range(m0))
    return Bimodule(A, B, tuple(f"x{i}" for i in range(m0)), la, ra)


def same_bimodule(bm: Bimodule, other: Bimodule) -> bool:
    """Equality of the index tables; element labels are ignored."""
    return (
        bm.left.table == other.left.table
        and bm.left.unit == other.left.unit
        and bm.right.table == other.right.table
        and bm.right.unit == other.right.unit
        and bm.left_action == other.left_action
        and bm.right_action == other.right_action
    )


def perturb_right(D: PrebimoduleData, seed: int = 0) -> tuple[PrebimoduleData, tuple]:
    """Copy of D with one value of a B-action changed along a map convex in the second coordinate."""
    rng = random.Random(seed)
    candidates = [
        (a, b, p)
        for a in D.B.objects()
        for b in D.B.objects()
        if D.B.sizes[b] > 0 and D.B.sizes[a] > 1
        for p in pair_maps(a, b)
        if simplex.is_convex(p[1]) and p[1].m < p[1].n
    ]
    if not candidates:
        raise InvalidInput("no nontrivial B-action to perturb (right monoid has one element?)")
    a, b, p = rng.choice(candidates)
    actions = dict(D.B.actions)
    arr = actions[p].copy()
    y = rng.randrange(len(arr))
    arr[y] = (arr[y] + 1) % D.B.sizes[a]
    actions[p] = arr
    B = BisimplicialFinSet(D.N, D.B.sizes, actions)
    return PrebimoduleData(D.N, D.M, D.A, B, D.u, D.v), (_pair_json(p), y)
