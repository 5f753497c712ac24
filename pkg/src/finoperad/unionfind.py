from __future__ import annotations

from typing import Hashable, Iterable


class UnionFind:
    """Disjoint sets over hashable items, with path halving and union by size.

    ``classes()`` orders classes by the first-inserted member of each class, so
    quotients built on top of it are deterministic.
    """

    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: dict = {}
        self.size: dict = {}
        for x in items:
            self.add(x)

    def add(self, x: Hashable) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x: Hashable) -> Hashable:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: Hashable, y: Hashable) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return True

    def classes(self) -> list[list]:
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())

    def labels(self) -> tuple[dict, int]:
        """Map each item to the index of its class; return the map and the class count."""
        label: dict = {}
        root_label: dict = {}
        for x in self.parent:
            r = self.find(x)
            if r not in root_label:
                root_label[r] = len(root_label)
            label[x] = root_label[r]
        return label, len(root_label)
