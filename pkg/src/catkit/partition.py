"""Disjoint-set forest and the partition type shared by several modules."""

from __future__ import annotations

from dataclasses import dataclass


class UnionFind:
    """Union-find over arbitrary hashable items, path compression, min-root merge.

    Merging by minimum representative (under the insertion order) keeps class
    representatives deterministic, which downstream quotient constructions
    rely on.
    """

    def __init__(self, items=()):
        self.parent = {}
        self.order = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.order[x] = len(self.order)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        self.add(x)
        self.add(y)
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.order[ry] < self.order[rx]:
            rx, ry = ry, rx
        self.parent[ry] = rx

    def classes(self):
        """Blocks as tuples, items in insertion order, blocks ordered by
        their earliest item."""
        by_root = {}
        for x in sorted(self.parent, key=self.order.get):
            by_root.setdefault(self.find(x), []).append(x)
        blocks = sorted(by_root.values(), key=lambda b: self.order[b[0]])
        return [tuple(b) for b in blocks]


@dataclass(frozen=True)
class ComponentPartition:
    """Nonempty, disjoint blocks covering a carrier set."""

    blocks: tuple

    def __post_init__(self):
        seen = set()
        for b in self.blocks:
            if not b:
                raise ValueError("empty block")
            for x in b:
                if x in seen:
                    raise ValueError(f"overlapping blocks at {x!r}")
                seen.add(x)

    def block_of(self, x):
        for i, b in enumerate(self.blocks):
            if x in b:
                return i
        raise KeyError(x)

    def __len__(self):
        return len(self.blocks)


def partition_from_unionfind(uf: UnionFind) -> ComponentPartition:
    return ComponentPartition(tuple(uf.classes()))
