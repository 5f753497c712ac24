"""Finite monoids as multiplication tables, with enumeration up to isomorphism."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InvalidInput


@dataclass(frozen=True)
class AssocMonoid:
    """Elements, a table of element indices, and the index of the unit."""

    elements: tuple
    table: tuple[tuple[int, ...], ...]
    unit: int
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        n = len(self.elements)
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "table", table)
        if len(set(self.elements)) != n:
            raise InvalidInput("elements: duplicate labels")
        if len(table) != n or any(len(row) != n for row in table):
            raise InvalidInput(f"table: expected a {n} x {n} table")
        if any(not 0 <= v < n for row in table for v in row):
            raise InvalidInput("table: entry outside the element range")
        if not 0 <= self.unit < n:
            raise InvalidInput("unit: outside the element range")

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, items) -> int:
        out = self.unit
        for x in items:
            out = self.table[out][x]
        return out

    def is_commutative(self) -> bool:
        n = len(self)
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def validate(self) -> list[dict]:
        """Failures of the unit and associativity laws."""
        t, e, n = self.table, self.unit, len(self)
        witnesses = []
        for a in range(n):
            if t[e][a] != a or t[a][e] != a:
                witnesses.append({"law": "unit", "element": self.elements[a]})
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                witnesses.append({"law": "associativity", "elements": [self.elements[x] for x in (a, b, c)]})
        return witnesses

    def relabel(self, perm: tuple[int, ...], elements=None) -> "AssocMonoid":
        """Transport along the bijection i -> perm[i]."""
        n = len(self)
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        new_elements = elements if elements is not None else tuple(self.elements[inv[j]] for j in range(n))
        table = tuple(tuple(perm[self.table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        return type(self)(tuple(new_elements), table, perm[self.unit], self.name)

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "table": [[self.elements[v] for v in row] for row in self.table],
            "unit": self.elements[self.unit],
        }

    @classmethod
    def from_json(cls, data) -> "AssocMonoid":
        for key in ("elements", "table", "unit"):
            if not isinstance(data, dict) or key not in data:
                raise InvalidInput(f"monoid: missing field '{key}'")
        elements = tuple(data["elements"])
        index = {x: i for i, x in enumerate(elements)}
        try:
            table = tuple(tuple(index[v] for v in row) for row in data["table"])
            unit = index[data["unit"]]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"monoid: table or unit names an unknown element {exc}") from None
        return cls(elements, table, unit, str(data.get("name", "")))


@dataclass(frozen=True)
class CommMonoid(AssocMonoid):
    def validate(self) -> list[dict]:
        witnesses = super().validate()
        n = len(self)
        for a, b in itertools.combinations(range(n), 2):
            if self.table[a][b] != self.table[b][a]:
                witnesses.append({"law": "commutativity", "elements": [self.elements[a], self.elements[b]]})
        return witnesses


def as_comm(A: AssocMonoid) -> CommMonoid:
    return CommMonoid(A.elements, A.table, A.unit, A.name)


def as_assoc(A: AssocMonoid) -> AssocMonoid:
    return AssocMonoid(A.elements, A.table, A.unit, A.name)


# ---------------------------------------------------------------- named examples

def trivial() -> CommMonoid:
    return CommMonoid(("e",), ((0,),), 0, "trivial")


def cyclic_group(k: int) -> CommMonoid:
    return CommMonoid(tuple(str(i) for i in range(k)), tuple(tuple((a + b) % k for b in range(k)) for a in range(k)), 0, f"Z/{k}")


def cyclic_monoid(k: int) -> CommMonoid:
    """{1, a, ..., a^(k-1)} with a^k = a^(k-1): the truncated powers of one generator."""
    table = tuple(tuple(min(a + b, k - 1) for b in range(k)) for a in range(k))
    return CommMonoid(tuple("1" if i == 0 else f"a{i}" for i in range(k)), table, 0, f"C{k}")


def semilattice2() -> CommMonoid:
    """{1, a} with a.a = a (the two-element meet-semilattice)."""
    return CommMonoid(("1", "a"), ((0, 1), (1, 1)), 0, "semilattice2")


def symmetric_group3() -> AssocMonoid:
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(tuple(index[tuple(p[q[i]] for i in range(3))] for q in perms) for p in perms)
    return AssocMonoid(tuple("".join(map(str, p)) for p in perms), table, 0, "S3")


def left_zero_monoid() -> AssocMonoid:
    """{1, a, b} with xy = x for x, y in {a, b}: noncommutative of order 3."""
    table = ((0, 1, 2), (1, 1, 1), (2, 2, 2))
    return AssocMonoid(("1", "a", "b"), table, 0, "left-zero")


# ---------------------------------------------------------------- enumeration

def _canonical(table: list[list[int]], n: int) -> tuple:
    best = None
    for rest in itertools.permutations(range(1, n)):
        perm = (0,) + rest
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        form = tuple(perm[table[inv[a]][inv[b]]] for a in range(n) for b in range(n))
        if best is None or form < best:
            best = form
    return best


def _search(n: int, commutative: bool) -> list[tuple]:
    """Canonical tables of monoids on 0..n-1 with unit 0, by backtracking."""
    if n == 0:
        return []
    t = [[-1] * n for _ in range(n)]
    for a in range(n):
        t[0][a] = a
        t[a][0] = a
    cells = [(a, b) for a in range(1, n) for b in range(1, n) if not commutative or a <= b]
    found = set()

    def consistent() -> bool:
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                if ab < 0:
                    continue
                for c in range(n):
                    bc = t[b][c]
                    if bc < 0:
                        continue
                    left, right = t[ab][c], t[a][bc]
                    if left >= 0 and right >= 0 and left != right:
                        return False
        return True

    def go(k: int) -> None:
        if k == len(cells):
            found.add(_canonical(t, n))
            return
        a, b = cells[k]
        for v in range(n):
            t[a][b] = v
            if commutative:
                t[b][a] = v
            if consistent():
                go(k + 1)
        t[a][b] = -1
        if commutative:
            t[b][a] = -1

    go(0)
    return sorted(found)


def _from_form(form: tuple, n: int, cls, name: str):
    table = tuple(tuple(form[a * n + b] for b in range(n)) for a in range(n))
    labels = tuple("e" if i == 0 else chr(ord("a") + i - 1) for i in range(n))
    return cls(labels, table, 0, name)


def enumerate_comm_monoids(order: int) -> list[CommMonoid]:
    """Commutative monoids of the given order, one per isomorphism class, unit first."""
    return [_from_form(f, order, CommMonoid, f"comm{order}.{i}") for i, f in enumerate(_search(order, True))]


def enumerate_assoc_monoids(order: int) -> list[AssocMonoid]:
    """Monoids of the given order, one per isomorphism class, unit first."""
    return [_from_form(f, order, AssocMonoid, f"mon{order}.{i}") for i, f in enumerate(_search(order, False))]


def all_comm_monoids(max_order: int) -> list[CommMonoid]:
    return [A for n in range(1, max_order + 1) for A in enumerate_comm_monoids(n)]


def all_assoc_monoids(max_order: int) -> list[AssocMonoid]:
    return [A for n in range(1, max_order + 1) for A in enumerate_assoc_monoids(n)]


def homomorphisms(A: AssocMonoid, B: AssocMonoid) -> list[tuple[int, ...]]:
    """Unit-preserving multiplicative maps A -> B, as index tuples."""
    out = []
    for f in itertools.product(range(len(B)), repeat=len(A)):
        if f[A.unit] != B.unit:
            continue
        if all(f[A.table[a][b]] == B.table[f[a]][f[b]] for a in range(len(A)) for b in range(len(A))):
            out.append(f)
    return out


def isomorphic(A: AssocMonoid, B: AssocMonoid) -> bool:
    n = len(A)
    if n != len(B):
        return False
    for perm in itertools.permutations(range(n)):
        if perm[A.unit] == B.unit and all(
            perm[A.table[a][b]] == B.table[perm[a]][perm[b]] for a in range(n) for b in range(n)
        ):
            return True
    return False
