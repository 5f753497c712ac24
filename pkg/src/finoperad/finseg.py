"""Pointed finite sets <n> = {*, 1, ..., n} and the maps between them.

The basepoint is index 0. A map <m> -> <n> is stored as the tuple of images of
1..m; the basepoint goes to the basepoint implicitly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import CompositionMismatch, InvalidInput
from .unionfind import UnionFind


@dataclass(frozen=True)
class PointedMap:
    m: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if self.m < 0 or self.n < 0:
            raise InvalidInput(f"arities must be nonnegative, got {self.m}, {self.n}")
        if len(values) != self.m:
            raise InvalidInput(f"values: expected {self.m} entries, got {len(values)}")
        for i, v in enumerate(values, 1):
            if not 0 <= v <= self.n:
                raise InvalidInput(f"values[{i}] = {v} is outside <{self.n}>")

    @classmethod
    def _trusted(cls, m: int, n: int, values: tuple[int, ...]) -> "PointedMap":
        # skips validation; only for values produced from already valid maps
        out = object.__new__(cls)
        object.__setattr__(out, "m", m)
        object.__setattr__(out, "n", n)
        object.__setattr__(out, "values", values)
        return out

    def __call__(self, i: int) -> int:
        return 0 if i == 0 else self.values[i - 1]

    def __repr__(self) -> str:
        body = ",".join("*" if v == 0 else str(v) for v in self.values)
        return f"<{self.m}>-[{body}]->< {self.n}>".replace("< ", "<")

    def fiber(self, j: int) -> tuple[int, ...]:
        """Preimage of ``j`` among the non-basepoint elements."""
        return tuple(i for i, v in enumerate(self.values, 1) if v == j)

    def fibers(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.n + 1)]
        for i, v in enumerate(self.values, 1):
            out[v].append(i)
        return [tuple(f) for f in out]

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values, 1) if v != 0)


@dataclass(frozen=True)
class MorphismClass:
    inert: bool
    active: bool
    semi_inert: bool
    null: bool
    injective_off_basepoint: bool


@dataclass(frozen=True)
class Splitting:
    alpha: PointedMap
    beta: PointedMap

    def __post_init__(self) -> None:
        if self.alpha.m != self.beta.m:
            raise InvalidInput("splitting maps must share a source")
        if not (is_inert(self.alpha) and is_inert(self.beta)):
            raise InvalidInput("splitting maps must be inert")
        hit = sorted(self.alpha.support() + self.beta.support())
        if hit != list(range(1, self.alpha.m + 1)):
            raise InvalidInput("preimages do not partition the non-basepoint elements")


def identity(n: int) -> PointedMap:
    return PointedMap(n, n, tuple(range(1, n + 1)))


def null_map(m: int, n: int) -> PointedMap:
    return PointedMap(m, n, (0,) * m)


def compose(g: PointedMap, f: PointedMap) -> PointedMap:
    """Return g after f."""
    if f.n != g.m:
        raise CompositionMismatch(f"cannot compose <{g.m}>-><{g.n}> after <{f.m}>-><{f.n}>")
    gv = (0,) + g.values
    return PointedMap._trusted(f.m, g.n, tuple([gv[v] for v in f.values]))


def collapse(n: int, i: int) -> PointedMap:
    """The map <n> -> <1> sending i to 1 and everything else to the basepoint."""
    if not 1 <= i <= n:
        raise InvalidInput(f"collapse index {i} outside 1..{n}")
    return PointedMap(n, 1, tuple(1 if j == i else 0 for j in range(1, n + 1)))


def all_maps(m: int, n: int) -> Iterator[PointedMap]:
    """Every pointed map <m> -> <n>, in lexicographic order of value tuples."""
    for values in itertools.product(range(n + 1), repeat=m):
        yield PointedMap(m, n, values)


def inert_maps(m: int, k: int) -> Iterator[PointedMap]:
    """Every inert map <m> -> <k>: choose the ordered preimages of 1..k."""
    for pre in itertools.permutations(range(1, m + 1), k):
        values = [0] * m
        for j, i in enumerate(pre, 1):
            values[i - 1] = j
        yield PointedMap(m, k, tuple(values))


def _counts(f: PointedMap) -> list[int]:
    counts = [0] * (f.n + 1)
    for v in f.values:
        counts[v] += 1
    return counts


def is_inert(f: PointedMap) -> bool:
    return all(c == 1 for c in _counts(f)[1:])


def is_active(f: PointedMap) -> bool:
    return 0 not in f.values


def is_semi_inert(f: PointedMap) -> bool:
    return all(c <= 1 for c in _counts(f)[1:])


def is_null(f: PointedMap) -> bool:
    return not any(f.values)


def classify(f: PointedMap) -> MorphismClass:
    counts = _counts(f)
    return MorphismClass(
        inert=all(c == 1 for c in counts[1:]),
        active=counts[0] == 0,
        semi_inert=all(c <= 1 for c in counts[1:]),
        null=counts[0] == f.m,
        # images of 1..m pairwise distinct, the basepoint counting as an image
        injective_off_basepoint=all(c <= 1 for c in counts),
    )


def factor_inert_active(f: PointedMap) -> tuple[PointedMap, PointedMap]:
    """Canonical factorization f = v . u with u inert and v active.

    The middle object is <k> with k the size of the support of f, and u is the
    order-preserving inert map onto the support. An inert f is returned as
    (f, id), so permutations keep their ordering in the inert leg.
    """
    if is_inert(f):
        return f, identity(f.n)
    support = f.support()
    position = {i: j for j, i in enumerate(support, 1)}
    u = PointedMap(f.m, len(support), tuple(position.get(i, 0) for i in range(1, f.m + 1)))
    v = PointedMap(len(support), f.n, tuple(f.values[i - 1] for i in support))
    return u, v


def factorizations(f: PointedMap) -> list[tuple[PointedMap, PointedMap]]:
    """All inert-active factorizations of f, by search over every middle object.

    For each middle arity k <= m every inert u: <m> -> <k> is tried. Since u is
    onto <k>, the only candidate v is read off f through u; it is kept when it
    is active and v . u == f.
    """
    found = []
    for k in range(f.m + 1):
        for u in inert_maps(f.m, k):
            v_values = [0] * k
            for i, j in enumerate(u.values, 1):
                if j:
                    v_values[j - 1] = f.values[i - 1]
            v = PointedMap(k, f.n, tuple(v_values))
            if is_active(v) and compose(v, u) == f:
                found.append((u, v))
    return found


def _smash_values(fv, f_target: int, gv, g_target: int):
    """Value table of f ^ g from value arrays; leading axes broadcast.

    Element (a, b) of <m> ^ <n> sits at index (a-1)n + b under the
    lexicographic identification, and maps to (f(a)-1)n' + g(b), or to the
    basepoint if either factor does.
    """
    fv = np.asarray(fv)
    gv = np.asarray(gv)
    a = fv[..., :, None]
    b = gv[..., None, :]
    out = np.where((a == 0) | (b == 0), 0, (a - 1) * g_target + b)
    return out.reshape(out.shape[:-2] + (fv.shape[-1] * gv.shape[-1],))


def smash_objects(m: int, n: int) -> int:
    return m * n


def smash(f: PointedMap, g: PointedMap) -> PointedMap:
    values = _smash_values(f.values, f.n, g.values, g.n)
    return PointedMap(f.m * g.m, f.n * g.n, tuple(int(v) for v in values))


def pushout(f: PointedMap, g: PointedMap) -> tuple[int, PointedMap, PointedMap]:
    """Pushout of <n> <-f- <m> -g-> <n'>.

    Elements of <n> and <n'> are glued along f(i) ~ g(i); classes meeting the
    basepoint collapse to it. The remaining classes are numbered in order of
    their first member, scanning <n> before <n'>.
    """
    if f.m != g.m:
        raise InvalidInput("pushout legs must share a source")
    uf = UnionFind(range(f.n + g.n + 1))
    # node 0 is the shared basepoint; <n'> element j is node n + j
    for fv, gv in zip(f.values, g.values):
        uf.union(fv, 0 if gv == 0 else f.n + gv)
    base = uf.find(0)
    number: dict = {}
    images = [0] * (f.n + g.n + 1)
    for node in range(1, f.n + g.n + 1):
        root = uf.find(node)
        if root == base:
            continue
        if root not in number:
            number[root] = len(number) + 1
        images[node] = number[root]
    k = len(number)
    left = PointedMap(f.n, k, tuple(images[1 : f.n + 1]))
    right = PointedMap(g.n, k, tuple(images[f.n + 1 :]))
    return k, left, right


def count_cocones(f: PointedMap, g: PointedMap, t: int) -> int:
    """Number of pairs (h, h') into <t> with h . f == h' . g, by enumerating h."""
    total = 0
    forced_slots = [[] for _ in range(g.n + 1)]
    for i, gv in enumerate(g.values):
        forced_slots[gv].append(f.values[i])
    for h in itertools.product(range(t + 1), repeat=f.n):
        hv = (0,) + h
        if any(hv[x] != 0 for x in forced_slots[0]):
            continue
        ways = 1
        for j in range(1, g.n + 1):
            demanded = {hv[x] for x in forced_slots[j]}
            if len(demanded) > 1:
                ways = 0
                break
            if not demanded:
                ways *= t + 1
        total += ways
    return total


def check_pushout(f: PointedMap, g: PointedMap, bound: int = 6) -> list[dict]:
    """Universal property of ``pushout(f, g)`` against cocones into <t>, t <= bound.

    Uniqueness of factorizations holds when the structure maps are jointly
    onto; existence holds when the cocones into <t> are exactly as many as the
    maps out of the pushout.
    """
    k, left, right = pushout(f, g)
    witnesses = []
    if compose(left, f) != compose(right, g):
        witnesses.append({"law": "commutes", "f": f.values, "g": g.values})
    hit = set(left.values) | set(right.values)
    if hit - {0} != set(range(1, k + 1)):
        witnesses.append({"law": "jointly-onto", "f": f.values, "g": g.values})
    for t in range(bound + 1):
        cones = count_cocones(f, g, t)
        if cones != (t + 1) ** k:
            witnesses.append(
                {"law": "existence", "f": f.values, "g": g.values, "t": t, "cocones": cones, "maps": (t + 1) ** k}
            )
    return witnesses


def split_complement(alpha: PointedMap) -> Splitting:
    """The order-preserving inert map collapsing the support of an inert ``alpha``."""
    if not is_inert(alpha):
        raise InvalidInput(f"split_complement needs an inert map, got {alpha!r}")
    rest = [i for i, v in enumerate(alpha.values, 1) if v == 0]
    position = {i: j for j, i in enumerate(rest, 1)}
    beta = PointedMap(alpha.m, len(rest), tuple(position.get(i, 0) for i in range(1, alpha.m + 1)))
    return Splitting(alpha, beta)


def complements(alpha: PointedMap, max_arity: int | None = None) -> list[PointedMap]:
    """Every inert beta out of the source of alpha completing it to a splitting."""
    top = alpha.m if max_arity is None else max_arity
    found = []
    for k in range(top + 1):
        for beta in inert_maps(alpha.m, k):
            if sorted(alpha.support() + beta.support()) == list(range(1, alpha.m + 1)):
                found.append(beta)
    return found


def to_json(f: PointedMap) -> dict:
    return {"m": f.m, "n": f.n, "values": list(f.values)}


def from_json(data) -> PointedMap:
    if not isinstance(data, dict):
        raise InvalidInput("pointed map: expected a JSON object")
    for key in ("m", "n", "values"):
        if key not in data:
            raise InvalidInput(f"pointed map: missing field '{key}'")
    m, n, values = data["m"], data["n"], data["values"]
    if not isinstance(m, int) or isinstance(m, bool):
        raise InvalidInput("pointed map: field 'm' must be an integer")
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidInput("pointed map: field 'n' must be an integer")
    if not isinstance(values, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
        raise InvalidInput("pointed map: field 'values' must be a list of integers")
    return PointedMap(m, n, tuple(values))


# Vectorized enumeration. Hom-sets are listed in ``itertools.product`` order,
# so the index of a map <m> -> <n> is its value tuple read in base n + 1.


@lru_cache(maxsize=None)
def hom_array(m: int, n: int) -> np.ndarray:
    arr = np.array(list(itertools.product(range(n + 1), repeat=m)), dtype=np.int64)
    arr = arr.reshape(((n + 1) ** m, m))
    arr.setflags(write=False)
    return arr


def map_index(values, n: int):
    """Index of maps with the given value rows inside ``hom_array(m, n)``."""
    values = np.asarray(values, dtype=np.int64)
    m = values.shape[-1]
    weights = (n + 1) ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return values @ weights


@lru_cache(maxsize=None)
def composition_index(m: int, n: int, p: int) -> np.ndarray:
    """``C[g, f]`` is the index of g . f for f in hom(m, n), g in hom(n, p)."""
    F = hom_array(m, n)
    G = np.concatenate([np.zeros(((p + 1) ** n, 1), dtype=np.int64), hom_array(n, p)], axis=1)
    composite = G[:, F]  # (#g, #f, m)
    out = map_index(composite, p)
    out.setflags(write=False)
    return out


def verify_factorization_system(bound: int = 5) -> tuple[list[dict], int]:
    """Exhaustive check that inert/active is a factorization system up to ``bound``.

    For every f: <m> -> <n> with m, n <= bound: the canonical factorization
    recomposes to f, and the factorizations found by search over all middle
    objects and all inert first legs are exactly the canonical one moved by
    the automorphisms of the middle object (each by a unique isomorphism).
    Returns the witnesses and the number of maps checked.
    """
    witnesses: list[dict] = []
    checked = 0
    for m in range(bound + 1):
        inert_by_k = {}
        for k in range(m + 1):
            rows = [u.values for u in inert_maps(m, k)]
            inert_by_k[k] = np.array(rows, dtype=np.int64).reshape(len(rows), m)
        for n in range(bound + 1):
            F = hom_array(m, n)
            checked += len(F)
            zero_f = F == 0
            support_size = m - zero_f.sum(axis=1)
            found_total = np.zeros(len(F), dtype=np.int64)
            for k, U in inert_by_k.items():
                if len(U) == 0:
                    continue
                # position in <m> of the preimage of each j under u
                preimage = np.argsort(np.where(U == 0, m + 1, U), axis=1)[:, :k]
                V = F[:, preimage]  # (#f, #u, k): the only v with v.u == f
                padded = np.concatenate([np.zeros(V.shape[:2] + (1,), dtype=np.int64), V], axis=2)
                recomposed = np.take_along_axis(padded, np.broadcast_to(U[None], (len(F),) + U.shape), axis=2)
                ok = (V != 0).all(axis=2) & (recomposed == F[:, None, :]).all(axis=2)
                found_total += ok.sum(axis=1)
                wrong_k = ok.any(axis=1) & (support_size != k)
                for idx in np.flatnonzero(wrong_k)[:5]:
                    witnesses.append({"law": "middle-object", "f": F[idx].tolist(), "k": k})
            expected = np.array([_factorial(s) for s in support_size], dtype=np.int64)
            for idx in np.flatnonzero(found_total != expected)[:5]:
                witnesses.append({"law": "uniqueness", "f": F[idx].tolist(),
                                  "found": int(found_total[idx]), "automorphisms": int(expected[idx])})
            for row in F:
                f = PointedMap(m, n, tuple(int(x) for x in row))
                u, v = factor_inert_active(f)
                if compose(v, u) != f or not is_inert(u) or not is_active(v):
                    witnesses.append({"law": "recompose", "f": list(f.values)})
    return witnesses, checked


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def verify_smash_laws(bound: int = 3) -> list[dict]:
    """Strict associativity, unitality and bifunctoriality of the smash product.

    Associativity runs over every triple of maps with arities <= bound, with
    all triples of a given arity pattern evaluated at once. Bifunctoriality is
    checked in its equivalent separated form: functoriality in each variable
    (against identities) together with the interchange law
    f ^ g = (f ^ id)(id ^ g) = (id ^ g)(f ^ id).
    """
    witnesses: list[dict] = []
    arities = [(m, n) for m in range(bound + 1) for n in range(bound + 1)]
    homs = {mn: hom_array(*mn) for mn in arities}
    for (m1, n1), (m2, n2), (m3, n3) in itertools.product(arities, repeat=3):
        F, G, H = homs[(m1, n1)], homs[(m2, n2)], homs[(m3, n3)]
        if 0 in (len(F), len(G), len(H)):
            continue
        fg = _smash_values(F[:, None, :], n1, G[None, :, :], n2)  # (#f, #g, m1 m2)
        left = _smash_values(fg[:, :, None, :], n1 * n2, H[None, None, :, :], n3)
        gh = _smash_values(G[:, None, :], n2, H[None, :, :], n3)  # (#g, #h, m2 m3)
        right = _smash_values(F[:, None, None, :], n1, gh[None, :, :, :], n2 * n3)
        bad = np.argwhere((left != right).reshape(len(F), len(G), len(H), -1).any(axis=3))
        for i, j, k in bad[:3]:
            witnesses.append({"law": "associativity", "f": F[i].tolist(), "g": G[j].tolist(),
                              "h": H[k].tolist(), "arities": [[m1, n1], [m2, n2], [m3, n3]]})
    for m, n in arities:
        F = homs[(m, n)]
        one = np.array([[1]])
        for side, table in (("left", _smash_values(one, 1, F, n)), ("right", _smash_values(F, n, one, 1))):
            if table.shape != F.shape or (table != F).any():
                witnesses.append({"law": f"{side}-unit", "arity": [m, n]})
    for m, n in itertools.product(range(bound + 1), repeat=2):
        ident = _smash_values(np.arange(1, m + 1), m, np.arange(1, n + 1), n)
        if (ident != np.arange(1, m * n + 1)).any():
            witnesses.append({"law": "identity", "objects": [m, n]})
    ids = {k: np.arange(1, k + 1, dtype=np.int64) for k in range(bound + 1)}
    for (m, n), (p, q) in itertools.product(arities, repeat=2):
        F, G = homs[(m, n)], homs[(p, q)]
        fg = _smash_values(F[:, None, :], n, G[None, :, :], q)  # (#f, #g, mp) into <nq>
        f_id = _smash_values(F, n, ids[q], q)  # (#f, mq) into <nq>
        id_g = _smash_values(ids[m], m, G, q)  # (#g, mp) into <mq>
        id_n_g = _smash_values(ids[n], n, G, q)  # (#g, np) into <nq>
        f_id_p = _smash_values(F, n, ids[p], p)  # (#f, mp) into <np>
        one_way = _compose_values(f_id[:, None, :], id_g[None, :, :])
        other_way = _compose_values(id_n_g[None, :, :], f_id_p[:, None, :])
        bad = (fg != one_way).any(axis=-1) | (fg != other_way).any(axis=-1)
        for i, j in np.argwhere(bad)[:3]:
            witnesses.append({"law": "interchange", "f": F[i].tolist(), "g": G[j].tolist()})
        inert_f, inert_g, inert_fg = _inert_rows(F, n), _inert_rows(G, q), _inert_rows(fg, n * q)
        for i, j in np.argwhere(inert_f[:, None] & inert_g[None, :] & ~inert_fg)[:3]:
            witnesses.append({"law": "inert-closure", "f": F[i].tolist(), "g": G[j].tolist()})
        active_f, active_g = (F != 0).all(axis=-1), (G != 0).all(axis=-1)
        active_fg = (fg != 0).all(axis=-1)
        for i, j in np.argwhere(active_f[:, None] & active_g[None, :] & ~active_fg)[:3]:
            witnesses.append({"law": "active-closure", "f": F[i].tolist(), "g": G[j].tolist()})
    for m, n, p in itertools.product(range(bound + 1), repeat=3):
        F, G = homs[(m, n)], homs[(n, p)]
        GF = _compose_values(G[:, None, :], F[None, :, :])  # (#g, #f, m) into <p>
        for k in range(bound + 1):
            left = _smash_values(GF, p, ids[k], k)
            right = _compose_values(_smash_values(G, p, ids[k], k)[:, None, :], _smash_values(F, n, ids[k], k)[None, :, :])
            for i, j in np.argwhere((left != right).any(axis=-1))[:3]:
                witnesses.append({"law": "functorial-left", "f": F[j].tolist(), "g": G[i].tolist(), "k": k})
            left = _smash_values(ids[k], k, GF, p)
            right = _compose_values(_smash_values(ids[k], k, G, p)[:, None, :], _smash_values(ids[k], k, F, n)[None, :, :])
            for i, j in np.argwhere((left != right).any(axis=-1))[:3]:
                witnesses.append({"law": "functorial-right", "f": F[j].tolist(), "g": G[i].tolist(), "k": k})
    return witnesses


def _compose_values(g_vals, f_vals):
    """Value tables of g . f; leading axes broadcast."""
    g_vals, f_vals = np.asarray(g_vals), np.asarray(f_vals)
    shape = np.broadcast_shapes(g_vals.shape[:-1], f_vals.shape[:-1])
    padded = np.concatenate([np.zeros(g_vals.shape[:-1] + (1,), dtype=g_vals.dtype), g_vals], axis=-1)
    padded = np.broadcast_to(padded, shape + padded.shape[-1:])
    index = np.broadcast_to(f_vals, shape + f_vals.shape[-1:])
    return np.take_along_axis(padded, index, axis=-1)


def _inert_rows(values, n: int):
    counts = np.stack([(values == j).sum(axis=-1) for j in range(1, n + 1)], axis=-1) if n else None
    if counts is None:
        return np.ones(values.shape[:-1], dtype=bool)
    return (counts == 1).all(axis=-1)


def verify_semi_inert_stability(bound: int = 4) -> list[dict]:
    """For every h = g . f with f inert: h is semi-inert iff g is."""
    witnesses = []
    for m, n, p in itertools.product(range(bound + 1), repeat=3):
        if n > m:
            continue
        gs = [(g, is_semi_inert(g)) for g in all_maps(n, p)]
        for f in inert_maps(m, n):
            for g, g_semi in gs:
                h = compose(g, f)
                if is_semi_inert(h) != g_semi:
                    witnesses.append({"f": list(f.values), "g": list(g.values), "arities": [m, n, p]})
    return witnesses


def verify_pushout_semi_inert(bound: int = 4) -> tuple[list[dict], int]:
    """Every pushout square with arities <= bound and one leg semi-inert has the opposite leg semi-inert.

    Returns the witnesses and the number of squares examined.
    """
    witnesses = []
    squares = 0
    for m in range(bound + 1):
        legs = [f for n in range(bound + 1) for f in all_maps(m, n)]
        semi = [f for f in legs if is_semi_inert(f)]
        for f in semi:
            for g in legs:
                squares += 1
                _, left, right = pushout(f, g)
                # left is opposite g, right is opposite f
                if not is_semi_inert(right):
                    witnesses.append({"semi_inert_leg": list(f.values), "other_leg": list(g.values),
                                      "opposite": list(right.values)})
                _, left2, _ = pushout(g, f)
                if not is_semi_inert(left2):
                    witnesses.append({"semi_inert_leg": list(f.values), "other_leg": list(g.values),
                                      "opposite": list(left2.values), "side": "mirror"})
    return witnesses, squares
