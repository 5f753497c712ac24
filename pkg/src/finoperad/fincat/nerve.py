"""Rational homology of the nerve of a finite category."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

from ..errors import BudgetExceeded
from .core import FinCat

DEFAULT_BUDGET = 200_000


def _budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("FINOPERAD_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def nondegenerate_simplices(C: FinCat, max_dim: int, budget: int | None = None) -> list[list[tuple]]:
    """Chains of composable non-identity morphisms, by length 0..max_dim.

    A chain of length 0 is an object. Raises BudgetExceeded naming the
    dimension whose simplices overflow the budget.
    """
    limit = _budget(budget)
    out_edges: dict = {a: [] for a in C.objects}
    for f in C.morphisms():
        if not C.is_identity(f):
            out_edges[C.source(f)].append(f)
    levels: list[list[tuple]] = [[(a,) for a in C.objects]]
    total = len(levels[0])
    if total > limit:
        raise BudgetExceeded("nerve simplices in dimension 0", total, limit)
    if max_dim >= 1:
        level = [(f,) for a in C.objects for f in out_edges[a]]
        total += len(level)
        if total > limit:
            raise BudgetExceeded("nerve simplices in dimension 1", total, limit)
        levels.append(level)
    for d in range(2, max_dim + 1):
        level = []
        for chain in levels[-1]:
            for g in out_edges[C.target(chain[-1])]:
                level.append(chain + (g,))
            if total + len(level) > limit:
                raise BudgetExceeded(f"nerve simplices in dimension {d}", total + len(level), limit)
        total += len(level)
        levels.append(level)
    return levels


def _faces(C: FinCat, chain: tuple, dim: int):
    """Nondegenerate faces of a nondegenerate simplex with their signs."""
    if dim == 1:
        f = chain[0]
        return [((C.target(f),), 1), ((C.source(f),), -1)]
    faces = []
    faces.append((chain[1:], 1))
    for i in range(1, dim):
        h = C.compose(chain[i], chain[i - 1])
        if not C.is_identity(h):
            faces.append((chain[: i - 1] + (h,) + chain[i + 1 :], -1 if i % 2 else 1))
    faces.append((chain[:-1], -1 if dim % 2 else 1))
    return faces


def boundary_rows(C: FinCat, levels: list[list[tuple]], dim: int) -> list[dict[int, int]]:
    """Rows of the normalized boundary from dimension dim to dim - 1, as sparse dicts."""
    index = {s: i for i, s in enumerate(levels[dim - 1])}
    rows = []
    for chain in levels[dim]:
        row: dict[int, int] = {}
        for face, sign in _faces(C, chain, dim):
            j = index[face]
            row[j] = row.get(j, 0) + sign
        rows.append({j: v for j, v in row.items() if v})
    return rows


def rank_exact(rows: list[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix, by fraction-free elimination.

    Rows are reduced by integer combinations and divided by their content,
    so entries stay small and the result is exact.
    """
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col not in pivots:
                g = 0
                for v in row.values():
                    g = math.gcd(g, v)
                pivots[col] = {j: v // g for j, v in row.items()}
                rank += 1
                break
            piv = pivots[col]
            a, b = piv[col], row[col]
            new: dict[int, int] = {}
            for j, v in row.items():
                new[j] = a * v
            for j, v in piv.items():
                w = new.get(j, 0) - b * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            g = 0
            for v in new.values():
                g = math.gcd(g, v)
            row = {j: v // g for j, v in new.items()} if g > 1 else new
    return rank


@dataclass(frozen=True)
class BettiSummary:
    d: int
    betti: tuple[int, ...]
    simplices: tuple[int, ...] = ()

    @property
    def contractible_evidence(self) -> bool:
        """Connected with vanishing rational homology through degree d."""
        return self.betti[0] == 1 and all(b == 0 for b in self.betti[1:])

    def to_json(self) -> dict:
        return {"d": self.d, "betti": list(self.betti)}


def nerve_betti(C: FinCat, d: int = 2, budget: int | None = None) -> BettiSummary:
    """Rational Betti numbers b_0..b_d of the nerve of C.

    Uses nondegenerate simplices up to dimension d + 1, so b_d is exact.
    """
    levels = nondegenerate_simplices(C, d + 1, budget)
    ranks = [0] * (d + 3)
    for k in range(1, d + 2):
        ranks[k] = rank_exact(boundary_rows(C, levels, k)) if levels[k] else 0
    betti = tuple(len(levels[k]) - ranks[k] - ranks[k + 1] for k in range(d + 1))
    return BettiSummary(d, betti, tuple(len(level) for level in levels))
