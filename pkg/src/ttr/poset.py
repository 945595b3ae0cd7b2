"""Finite posets given by cover relations, and isomorphism search."""

from __future__ import annotations

from collections import defaultdict
from typing import Hashable, Iterable, Sequence


class Poset:
    """Elements plus cover pairs ``(upper, lower)``."""

    def __init__(self, elements: Sequence[Hashable], covers: Iterable[tuple[Hashable, Hashable]]):
        self.elements = list(elements)
        self.covers = sorted(set(covers), key=repr)
        idx = set(self.elements)
        self.down: dict = defaultdict(set)
        self.up: dict = defaultdict(set)
        for a, b in self.covers:
            if a not in idx or b not in idx:
                raise ValueError("cover relation mentions an unknown element")
            self.down[a].add(b)
            self.up[b].add(a)
        self._below = {x: self._reach(x, self.down) for x in self.elements}
        self._above = {x: self._reach(x, self.up) for x in self.elements}
        if any(x in self._below[x] for x in self.elements):
            raise ValueError("cover relations contain a cycle")

    def __len__(self) -> int:
        return len(self.elements)

    @staticmethod
    def _reach(x, step) -> set:
        seen: set = set()
        stack = list(step[x])
        while stack:
            y = stack.pop()
            if y not in seen:
                seen.add(y)
                stack.extend(step[y])
        return seen

    def leq(self, a, b) -> bool:
        return a == b or a in self._below[b]

    def below(self, x) -> set:
        return set(self._below[x])

    def maxima(self) -> list:
        return [x for x in self.elements if not self.up[x]]

    def minima(self) -> list:
        return [x for x in self.elements if not self.down[x]]

    def height(self) -> int:
        """Number of elements in a longest chain."""
        memo: dict = {}

        def depth(x) -> int:
            if x not in memo:
                memo[x] = 1 + max((depth(y) for y in self.down[x]), default=0)
            return memo[x]

        return max((depth(x) for x in self.elements), default=0)

    def is_transitively_reduced(self) -> bool:
        for a, b in self.covers:
            for c in self.down[a]:
                if c != b and b in self._below[c]:
                    return False
        return True

    def _signature(self, x) -> tuple[int, int, int, int]:
        return (len(self.up[x]), len(self.down[x]), len(self._above[x]), len(self._below[x]))


def poset_isomorphic(p: Poset, q: Poset) -> dict | None:
    """An order isomorphism ``p -> q`` or ``None``.

    Backtracking over elements of ``p`` in a fixed order; candidates must
    share up/down degree and the sizes of the principal up- and down-sets,
    and every cover between already-assigned elements must be preserved in
    both directions.
    """
    if len(p) != len(q) or len(p.covers) != len(q.covers):
        return None
    sig_q: dict = defaultdict(list)
    for y in q.elements:
        sig_q[q._signature(y)].append(y)
    if sorted(map(p._signature, p.elements)) != sorted(q._signature(y) for y in q.elements):
        return None
    order = sorted(p.elements, key=lambda x: (len(sig_q[p._signature(x)]), -len(p._below[x]), repr(x)))
    mapping: dict = {}
    used: set = set()

    def consistent(x, y) -> bool:
        for x2, y2 in mapping.items():
            if (x2 in p.down[x]) != (y2 in q.down[y]):
                return False
            if (x in p.down[x2]) != (y in q.down[y2]):
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in sig_q[p._signature(x)]:
            if y in used or not consistent(x, y):
                continue
            mapping[x] = y
            used.add(y)
            if extend(i + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return dict(mapping) if extend(0) else None
