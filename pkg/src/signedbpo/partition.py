"""Tree-based laminar partitions of a finite ordered set.

Level 1 is the singleton partition; each later level pairs adjacent nodes
of the previous one (an odd trailing node is carried up alone, i.e. padded
with a virtual empty node that is never stored); the last level is the
whole set.  Every level is a partition, the family is laminar, and node
sizes at level i are at most 2^(i-1).  Trees are immutable after build.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Sequence


@dataclass(frozen=True)
class PartitionTree:
    base: tuple[Hashable, ...]
    levels: tuple[tuple[tuple[Hashable, ...], ...], ...]  # levels[i-1] = level i

    @property
    def num_levels(self) -> int:
        return len(self.levels)

    def level(self, i: int) -> tuple[tuple[Hashable, ...], ...]:
        """The partition at level i (1-based; 1 = singletons)."""
        if not 1 <= i <= self.num_levels:
            raise ValueError(f"level {i} out of range 1..{self.num_levels}")
        return self.levels[i - 1]

    def width(self, i: int) -> int:
        return len(self.level(i))


def build_partition_tree(base: Sequence[Hashable]) -> PartitionTree:
    """Build the tree by pairing adjacent nodes in the given order."""
    items = tuple(base)
    if not items:
        raise ValueError("cannot build a partition tree of an empty set")
    if len(set(items)) != len(items):
        raise ValueError("base elements must be distinct")
    levels: list[tuple[tuple[Hashable, ...], ...]] = []
    current: list[tuple[Hashable, ...]] = [(c,) for c in items]
    levels.append(tuple(current))
    while len(current) > 1:
        nxt: list[tuple[Hashable, ...]] = []
        for k in range(0, len(current) - 1, 2):
            nxt.append(current[k] + current[k + 1])
        if len(current) % 2:
            nxt.append(current[-1])  # virtual empty partner, dropped
        current = nxt
        levels.append(tuple(current))
    tree = PartitionTree(items, tuple(levels))
    expected = 1 if len(items) == 1 else math.ceil(math.log2(len(items))) + 1
    if tree.num_levels != expected:
        raise AssertionError(f"level count {tree.num_levels} != {expected}")
    return tree
