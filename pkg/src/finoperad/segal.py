"""Set-valued functors satisfying Segal conditions, and the monoids they encode.

A Gamma-set here is a functor from pointed finite sets <0>..<N> to finite
sets. Actions are stored as integer arrays: ``actions[(m, n)][f, x]`` is the
image of element x of M(<m>) under the f-th map of ``finseg.hom_array(m, n)``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import finseg, simplex
from .errors import CheckFailed, InvalidInput
from .finseg import PointedMap
from .monoids import AssocMonoid, CommMonoid
from .simplex import SimplexMap

CHUNK = 1 << 22


# ---------------------------------------------------------------- powers of a monoid

@lru_cache(maxsize=None)
def power_digits(k: int, m: int) -> np.ndarray:
    """All tuples in {0..k-1}^m, lexicographic, as a (k^m, m) array."""
    arr = np.array(list(itertools.product(range(k), repeat=m)), dtype=np.int64).reshape(k**m, m)
    arr.setflags(write=False)
    return arr


def encode(digits: np.ndarray, k: int) -> np.ndarray:
    n = digits.shape[-1]
    return digits @ (k ** np.arange(n - 1, -1, -1, dtype=np.int64))


def grouped_products(table: np.ndarray, unit: int, m: int, groups) -> np.ndarray:
    """For x in A^m (lexicographic), the index of (prod over groups[0], ..., prod over groups[-1]).

    Each group is a sequence of input positions (0-based) multiplied left to
    right; an empty group gives the unit.
    """
    k = table.shape[0]
    X = power_digits(k, m)
    cols = []
    for group in groups:
        val = np.full(X.shape[0], unit, dtype=np.int64)
        for i in group:
            val = table[val, X[:, i]]
        cols.append(val)
    if not cols:
        return np.zeros(X.shape[0], dtype=np.int64)
    return encode(np.stack(cols, axis=1), k)


# ---------------------------------------------------------------- Gamma-sets

@dataclass
class GammaSet:
    N: int
    carriers: dict
    actions: dict

    def __post_init__(self) -> None:
        for n in range(self.N + 1):
            if n not in self.carriers:
                raise InvalidInput(f"carriers: missing level {n}")
        for m in range(self.N + 1):
            for n in range(self.N + 1):
                arr = np.asarray(self.actions.get((m, n)))
                want = ((n + 1) ** m, len(self.carriers[m]))
                if arr.shape != want:
                    raise InvalidInput(f"actions[{m},{n}]: expected shape {want}, got {arr.shape}")
                if arr.size and (arr.min() < 0 or arr.max() >= len(self.carriers[n])):
                    raise InvalidInput(f"actions[{m},{n}]: value outside the target carrier")
                self.actions[(m, n)] = arr.astype(np.int64)

    def size(self, n: int) -> int:
        return len(self.carriers[n])

    def act(self, f: PointedMap) -> np.ndarray:
        return self.actions[(f.m, f.n)][int(finseg.map_index(f.values, f.n))]

    def validate(self) -> list[dict]:
        """Exhaustive functoriality over all composable pairs."""
        witnesses = []
        N = self.N
        for n in range(N + 1):
            ident = int(finseg.map_index(finseg.identity(n).values, n))
            if not np.array_equal(self.actions[(n, n)][ident], np.arange(self.size(n))):
                witnesses.append({"law": "identity", "n": n})
        top = max(self.size(n) for n in range(N + 1))
        small = np.uint8 if top <= 256 else (np.uint16 if top <= 65536 else np.int64)
        values = {key: arr.astype(small) for key, arr in self.actions.items()}
        for m, n, p in itertools.product(range(N + 1), repeat=3):
            A_mn = self.actions[(m, n)]
            if A_mn.shape[1] == 0:
                continue
            V_np, V_mp = values[(n, p)], values[(m, p)]
            C = finseg.composition_index(m, n, p)
            G = V_np.shape[0]
            step = max(1, CHUNK // max(1, A_mn.size))
            for start in range(0, G, step):
                rows = slice(start, min(G, start + step))
                lhs = V_np[rows][:, A_mn]
                rhs = V_mp[C[rows]]
                if np.array_equal(lhs, rhs):
                    continue
                g, f, x = np.argwhere(lhs != rhs)[0]
                witnesses.append({
                    "law": "composition",
                    "f": finseg.to_json(PointedMap(m, n, finseg.hom_array(m, n)[f])),
                    "g": finseg.to_json(PointedMap(n, p, finseg.hom_array(n, p)[start + g])),
                    "element": int(x),
                })
                break
        return witnesses

    def relabel(self, perms: dict) -> "GammaSet":
        """Transport along bijections perms[n]: M(n) -> M(n) (element x goes to perms[n][x])."""
        carriers, actions = {}, {}
        inv = {}
        for n in range(self.N + 1):
            p = np.asarray(perms[n], dtype=np.int64)
            q = np.empty_like(p)
            q[p] = np.arange(len(p))
            inv[n] = q
            carriers[n] = tuple(self.carriers[n][q[i]] for i in range(len(p)))
        for (m, n), arr in self.actions.items():
            p_n = np.asarray(perms[n], dtype=np.int64)
            actions[(m, n)] = p_n[arr[:, inv[m]]]
        return GammaSet(self.N, carriers, actions)

    def to_json(self) -> dict:
        acts = []
        for (m, n), arr in sorted(self.actions.items()):
            for f, row in zip(finseg.hom_array(m, n), arr):
                acts.append({"map": {"m": m, "n": n, "values": [int(v) for v in f]}, "values": [int(v) for v in row]})
        return {
            "N": self.N,
            "carriers": [[str(x) for x in self.carriers[n]] for n in range(self.N + 1)],
            "actions": acts,
        }

    @classmethod
    def from_json(cls, data) -> "GammaSet":
        for key in ("N", "carriers", "actions"):
            if not isinstance(data, dict) or key not in data:
                raise InvalidInput(f"gamma set: missing field '{key}'")
        N = int(data["N"])
        if len(data["carriers"]) != N + 1:
            raise InvalidInput(f"gamma set: carriers must list levels 0..{N}")
        carriers = {n: tuple(c) for n, c in enumerate(data["carriers"])}
        actions = {
            (m, n): np.full(((n + 1) ** m, len(carriers[m])), -1, dtype=np.int64)
            for m in range(N + 1)
            for n in range(N + 1)
        }
        for entry in data["actions"]:
            if not isinstance(entry, dict) or "map" not in entry or "values" not in entry:
                raise InvalidInput("gamma set: each action needs fields 'map' and 'values'")
            f = finseg.from_json(entry["map"])
            if f.m > N or f.n > N:
                raise InvalidInput(f"gamma set: action for {f!r} beyond truncation {N}")
            actions[(f.m, f.n)][int(finseg.map_index(f.values, f.n))] = entry["values"]
        for (m, n), arr in actions.items():
            if (arr < 0).any():
                row = int(np.argwhere((arr < 0).any(axis=1))[0][0])
                f = PointedMap(m, n, finseg.hom_array(m, n)[row])
                if m == n and f == finseg.identity(n):
                    arr[row] = np.arange(len(carriers[m]))
                else:
                    raise InvalidInput(f"gamma set: missing action for {f!r}")
        return cls(N, carriers, actions)


def constant_gamma(elements, N: int = 4) -> GammaSet:
    elements = tuple(elements)
    carriers = {n: elements for n in range(N + 1)}
    actions = {
        (m, n): np.tile(np.arange(len(elements)), ((n + 1) ** m, 1)) for m in range(N + 1) for n in range(N + 1)
    }
    return GammaSet(N, carriers, actions)


def segal_map(M: GammaSet, n: int) -> np.ndarray:
    """Rows (rho^1 x, ..., rho^n x) for x in M(<n>), as an (|M(n)|, n) array."""
    cols = [M.act(finseg.collapse(n, i)) for i in range(1, n + 1)]
    if not cols:
        return np.zeros((M.size(n), 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def check_gamma_segal(M: GammaSet, functoriality: bool = False) -> list[dict]:
    """Segal conditions: M(<0>) is a point and M(<n>) -> M(<1>)^n is bijective for n >= 2."""
    witnesses = []
    if M.size(0) != 1:
        witnesses.append({"condition": "M(<0>) is a point", "n": 0, "size": M.size(0)})
    k = M.size(1)
    for n in range(2, M.N + 1):
        rows = segal_map(M, n)
        codes = encode(rows, k) if rows.size else np.zeros(0, dtype=np.int64)
        if M.size(n) != k**n or len(np.unique(codes)) != len(codes):
            witnesses.append({"condition": "Segal map bijective", "n": n, "size": M.size(n), "expected": k**n})
    if functoriality:
        witnesses.extend(M.validate())
    return witnesses


def comm_monoid_to_gamma(A: CommMonoid, N: int = 4) -> GammaSet:
    """M(<n>) = A^n; a map multiplies each fiber, empty fibers giving the unit."""
    bad = A.validate()
    if bad:
        raise CheckFailed("not a commutative monoid", bad)
    return _power_gamma(np.array(A.table, dtype=np.int64), A.unit, A.elements, N)


def _power_gamma(table: np.ndarray, unit: int, elements, N: int) -> GammaSet:
    k = table.shape[0]
    carriers = {
        n: tuple(elements) if n == 1 else tuple(tuple(elements[i] for i in t) for t in itertools.product(range(k), repeat=n))
        for n in range(N + 1)
    }
    actions = {}
    for m in range(N + 1):
        for n in range(N + 1):
            F = finseg.hom_array(m, n)
            rows = []
            for f in F:
                groups = [[i for i in range(m) if f[i] == j] for j in range(1, n + 1)]
                rows.append(grouped_products(table, unit, m, groups))
            actions[(m, n)] = np.array(rows, dtype=np.int64).reshape(len(F), k**m)
    return GammaSet(N, carriers, actions)


def normalized_candidate(table, unit: int, N: int = 4) -> GammaSet:
    """The only functor with M(<n>) = A^n, collapses acting by projection,
    unit and binary product as given: every fiber is multiplied left to right.

    No laws are assumed of ``table``; use ``validate`` to see whether the
    result is a functor.
    """
    table = np.asarray(table, dtype=np.int64)
    return _power_gamma(table, unit, tuple(str(i) for i in range(table.shape[0])), N)


def gamma_to_comm_monoid(M: GammaSet) -> CommMonoid:
    """Unit from <0> -> <1>, product from the inverse Segal map at <2> followed by <2> -> <1>."""
    if M.N < 3:
        raise InvalidInput(f"truncation {M.N} < 3 cannot certify associativity")
    bad = check_gamma_segal(M)
    if bad:
        raise CheckFailed("Segal condition fails", bad)
    k = M.size(1)
    unit = int(M.act(PointedMap(0, 1, ()))[0])
    rows = encode(segal_map(M, 2), k)
    inverse = np.empty(k * k, dtype=np.int64)
    inverse[rows] = np.arange(M.size(2))
    mult = M.act(PointedMap(2, 1, (1, 1)))
    table = tuple(tuple(int(mult[inverse[a * k + b]]) for b in range(k)) for a in range(k))
    A = CommMonoid(tuple(M.carriers[1]), table, unit)
    bad = A.validate()
    if bad:
        raise CheckFailed("extracted product is not a commutative monoid", bad)
    return A


def segal_comparison(M: GammaSet, A: CommMonoid | None = None) -> list[dict]:
    """The Segal maps form a natural isomorphism M -> comm_monoid_to_gamma(A)."""
    A = A or gamma_to_comm_monoid(M)
    G = comm_monoid_to_gamma(A, M.N)
    k = len(A)
    witnesses = []
    eta = {}
    for n in range(M.N + 1):
        codes = encode(segal_map(M, n), k) if n else np.zeros(M.size(0), dtype=np.int64)
        if len(np.unique(codes)) != len(codes) or len(codes) != G.size(n):
            witnesses.append({"condition": "component bijective", "n": n})
        eta[n] = codes
    if witnesses:
        return witnesses
    for (m, n), arr in M.actions.items():
        lhs = eta[n][arr]
        rhs = G.actions[(m, n)][:, eta[m]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            f, x = bad[0]
            witnesses.append({"condition": "naturality", "map": [int(v) for v in finseg.hom_array(m, n)[f]], "m": m, "n": n, "element": int(x)})
    return witnesses


def random_relabeling(M: GammaSet, seed: int) -> GammaSet:
    rng = random.Random(seed)
    perms = {}
    for n in range(M.N + 1):
        p = list(range(M.size(n)))
        rng.shuffle(p)
        perms[n] = p
    return M.relabel(perms)


def perturb(M: GammaSet, seed: int) -> tuple[GammaSet, tuple]:
    """Change one action entry of a non-identity map; returns the copy and the changed location."""
    rng = random.Random(seed)
    choices = [(m, n) for (m, n) in M.actions if M.size(m) and M.size(n) > 1]
    m, n = rng.choice(sorted(choices))
    actions = {key: arr.copy() for key, arr in M.actions.items()}
    ident = int(finseg.map_index(finseg.identity(n).values, n)) if m == n else -1
    f = rng.choice([i for i in range((n + 1) ** m) if i != ident])
    x = rng.randrange(M.size(m))
    actions[(m, n)][f, x] = (actions[(m, n)][f, x] + 1) % M.size(n)
    return GammaSet(M.N, dict(M.carriers), actions), (m, n, f, x)


# ---------------------------------------------------------------- simplicial sets

@lru_cache(maxsize=None)
def simplex_maps(m: int, n: int) -> tuple[SimplexMap, ...]:
    return tuple(simplex.all_maps(m, n))


@dataclass
class SimplicialFinSet:
    """Contravariant on the simplex category: ``actions[f]`` maps X[n] -> X[m] for f: [m] -> [n]."""

    N: int
    carriers: dict
    actions: dict

    def size(self, n: int) -> int:
        return len(self.carriers[n])

    def act(self, f: SimplexMap) -> np.ndarray:
        return self.actions[f]

    def validate(self) -> list[dict]:
        witnesses = []
        for n in range(self.N + 1):
            if not np.array_equal(self.actions[simplex.identity(n)], np.arange(self.size(n))):
                witnesses.append({"law": "identity", "n": n})
        stacked = {
            (a, b): np.array([self.actions[f] for f in simplex_maps(a, b)], dtype=np.int64).reshape(-1, self.size(b))
            for a in range(self.N + 1)
            for b in range(self.N + 1)
        }
        for a, b, c in itertools.product(range(self.N + 1), repeat=3):
            AF, AG = stacked[(a, b)], stacked[(b, c)]
            lhs = AF[:, AG]  # X(f) after X(g), indexed [f, g, y]
            rhs = stacked[(a, c)][delta_composition_index(a, b, c)]
            if not np.array_equal(lhs, rhs):
                fi, gi, _ = np.argwhere(lhs != rhs)[0]
                f, g = simplex_maps(a, b)[fi], simplex_maps(b, c)[gi]
                witnesses.append({"law": "composition", "f": list(f.values), "g": list(g.values)})
        return witnesses


@lru_cache(maxsize=None)
def delta_composition_index(a: int, b: int, c: int) -> np.ndarray:
    """``C[f, g]`` is the index of g . f among the maps [a] -> [c]."""
    index = {h: i for i, h in enumerate(simplex_maps(a, c))}
    out = np.array(
        [[index[simplex.compose(g, f)] for g in simplex_maps(b, c)] for f in simplex_maps(a, b)], dtype=np.int64
    ).reshape(len(simplex_maps(a, b)), len(simplex_maps(b, c)))
    out.setflags(write=False)
    return out


def nerve_of_monoid(A: AssocMonoid, N: int = 4) -> SimplicialFinSet:
    """X[n] = A^n (strings of n arrows); f: [m] -> [n] multiplies the arrows between f(j-1) and f(j)."""
    table = np.array(A.table, dtype=np.int64)
    carriers = {n: tuple(itertools.product(A.elements, repeat=n)) for n in range(N + 1)}
    actions = {}
    for m in range(N + 1):
        for n in range(N + 1):
            for f in simplex_maps(m, n):
                groups = [list(range(f.values[j - 1], f.values[j])) for j in range(1, m + 1)]
                actions[f] = grouped_products(table, A.unit, n, groups)
    return SimplicialFinSet(N, carriers, actions)


def ass_action(A: AssocMonoid, f: simplex.AssMorphism) -> np.ndarray:
    """The functor of A on the associative category: multiply each fiber in its given order."""
    table = np.array(A.table, dtype=np.int64)
    return grouped_products(table, A.unit, f.m, [[i - 1 for i in order] for order in f.orders])


def check_ass_functor(A: AssocMonoid, N: int = 3) -> list[dict]:
    """Functoriality of the A-valued functor on the associative category up to <N>."""
    witnesses = []
    maps = {(m, n): list(simplex.ass_maps(m, n)) for m in range(N + 1) for n in range(N + 1)}
    acts = {f: ass_action(A, f) for fs in maps.values() for f in fs}
    for m, n, p in itertools.product(range(N + 1), repeat=3):
        for f in maps[(m, n)]:
            for g in maps[(n, p)]:
                if not np.array_equal(acts[g][acts[f]], acts[simplex.compose_ass(g, f)]):
                    witnesses.append({"law": "composition", "f": simplex.ass_to_json(f), "g": simplex.ass_to_json(g)})
    return witnesses


def spine_map(X: SimplicialFinSet, n: int) -> np.ndarray:
    cols = [X.act(simplex.edge(n, k)) for k in range(1, n + 1)]
    if not cols:
        return np.zeros((X.size(n), 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def extract_monoid(X: SimplicialFinSet) -> AssocMonoid:
    """Unit from the degeneracy [1] -> [0]; product from the inverse spine at [2] and the long edge."""
    k = X.size(1)
    unit = int(X.act(SimplexMap(1, 0, (0, 0)))[0])
    codes = encode(spine_map(X, 2), k)
    inverse = np.empty(k * k, dtype=np.int64)
    inverse[codes] = np.arange(X.size(2))
    long_edge = X.act(SimplexMap(1, 2, (0, 2)))
    table = tuple(tuple(int(long_edge[inverse[a * k + b]]) for b in range(k)) for a in range(k))
    return AssocMonoid(tuple(x[0] for x in X.carriers[1]), table, unit)


def simplicial_monoid_roundtrip(A: AssocMonoid, N: int = 4, ass_functor_bound: int = 2) -> dict:
    """Compare the nerve of A with the restriction of A's associative-category functor along the gap functor.

    Returns {"passed": bool, "checks": {name: witnesses}}.
    """
    if N < 3:
        raise InvalidInput(f"truncation {N} < 3")
    bad = A.validate()
    if bad:
        raise CheckFailed("not a monoid", bad)
    X = nerve_of_monoid(A, N)
    checks: dict[str, list] = {}
    checks["nerve functorial"] = X.validate()
    checks["associative functor functorial"] = check_ass_functor(A, min(ass_functor_bound, N))
    phi_bad = []
    for m in range(N + 1):
        for n in range(N + 1):
            for f in simplex_maps(m, n):
                if not np.array_equal(ass_action(A, simplex.phi(f)), X.act(f)):
                    phi_bad.append({"f": list(f.values), "m": m, "n": n})
    checks["restriction along phi"] = phi_bad
    k = len(A)
    segal_bad = []
    if X.size(0) != 1:
        segal_bad.append({"n": 0, "size": X.size(0)})
    for n in range(2, N + 1):
        codes = encode(spine_map(X, n), k)
        if len(np.unique(codes)) != len(codes) or len(codes) != k**n:
            segal_bad.append({"n": n})
    checks["reduced Segal"] = segal_bad
    convex_bad = []
    for m in range(1, N + 1):
        for n in range(N + 1):
            for f in simplex_maps(m, n):
                if not simplex.is_convex(f):
                    continue
                s = f.values[0]
                want = spine_map(X, n)[:, s : s + m]
                if not np.array_equal(spine_map(X, m)[X.act(f)], want):
                    convex_bad.append({"f": list(f.values)})
    checks["convex maps act by spine projections"] = convex_bad
    B = extract_monoid(X)
    checks["extracted monoid"] = [] if (B.table == A.table and B.unit == A.unit) else [{"table": B.table, "unit": B.unit}]
    return {"passed": all(not w for w in checks.values()), "checks": checks}


# ---------------------------------------------------------------- completeness at small order

def normalized_segal_search(k: int, N: int = 4) -> tuple[list[tuple], int]:
    """Every unit and binary table on k elements whose normalized candidate is a functor.

    Returns the surviving (table, unit) pairs and the number of candidates tried.
    """
    survivors, tried = [], 0
    for unit in range(k):
        for flat in itertools.product(range(k), repeat=k * k):
            tried += 1
            table = np.array(flat, dtype=np.int64).reshape(k, k)
            M = normalized_candidate(table, unit, N)
            if not M.validate():
                survivors.append((tuple(map(tuple, table.tolist())), unit))
    return survivors, tried
