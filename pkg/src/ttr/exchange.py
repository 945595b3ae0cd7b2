"""Breadth-first enumeration of the support tau-tilting exchange graph.

Nodes are basic two-term silting complexes keyed by the sorted multiset of
their summand g-vectors. Edges come from mutation and are oriented from the
larger to the smaller complex in the silting order, which makes them the
arrows of the Hasse quiver.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .algebra import BoundQuiverAlgebra
from .complexes import TwoTermComplex, h0
from .errors import CapZero, IncompleteGraph, InvariantViolation
from .poset import Poset
from .representation import Representation
from .silting import (
    Key,
    Summand,
    assemble,
    bongartz_summands,
    co_bongartz_summands,
    exchanged_index,
    key_of,
    mutate_summands,
    order_leq,
    summands,
)

log = logging.getLogger(__name__)

DEFAULT_CAP = 10_000


@dataclass(eq=False)
class Node:
    key: Key
    parts: list[Summand]

    @cached_property
    def complex(self) -> TwoTermComplex:
        return assemble(self.parts[0].complex.alg, self.parts)

    @cached_property
    def module(self) -> Representation:
        return h0(self.complex)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(s.shift_vertex for s in self.parts if s.shift_vertex is not None)


@dataclass(eq=False)
class MutationGraph:
    alg: BoundQuiverAlgebra
    nodes: dict[Key, Node] = field(default_factory=dict)
    neighbors: dict[Key, dict[int, Key]] = field(default_factory=dict)
    hasse_arrows: list[tuple[Key, Key]] = field(default_factory=list)
    complete: bool = True
    frozen: tuple = ()
    u_parts: list[Summand] = field(default_factory=list)

    def keys(self) -> list[Key]:
        return sorted(self.nodes)

    def edges(self) -> set[frozenset]:
        return {frozenset((a, b)) for a, nb in self.neighbors.items() for b in nb.values()}

    def degree(self, key: Key) -> int:
        return len(set(self.neighbors.get(key, {}).values()))

    @property
    def maximum(self) -> list[Key]:
        lower = {b for _, b in self.hasse_arrows}
        return [k for k in self.keys() if k not in lower]

    @property
    def minimum(self) -> list[Key]:
        upper = {a for a, _ in self.hasse_arrows}
        return [k for k in self.keys() if k not in upper]


def _bfs(alg: BoundQuiverAlgebra, start: list[Summand], cap: int, u_parts: list[Summand], seed: int) -> MutationGraph:
    if cap < 2:
        raise CapZero(f"node cap must be at least 2, got {cap}")
    frozen = {s.g for s in u_parts}
    graph = MutationGraph(alg, frozen=tuple(sorted(frozen)), u_parts=list(u_parts))
    root = Node(key_of(start), start)
    graph.nodes[root.key] = root
    graph.neighbors[root.key] = {}
    level = [root.key]
    while level:
        nxt: list[Key] = []
        for key in sorted(level):
            node = graph.nodes[key]
            for k, part in enumerate(node.parts):
                if part.g in frozen or k in graph.neighbors[key]:
                    continue
                new_parts = mutate_summands(alg, node.parts, k, seed)
                new_key = key_of(new_parts)
                if new_key not in graph.nodes:
                    if len(graph.nodes) >= cap:
                        graph.complete = False
                        continue
                    graph.nodes[new_key] = Node(new_key, new_parts)
                    graph.neighbors[new_key] = {}
                    nxt.append(new_key)
                other = graph.nodes[new_key]
                back = exchanged_index(node.parts, other.parts)
                graph.neighbors[key][k] = new_key
                graph.neighbors[new_key][back] = key
        level = nxt
    _orient(graph)
    log.info("enumerated %d nodes (complete=%s)", len(graph.nodes), graph.complete)
    return graph


def _orient(graph: MutationGraph) -> None:
    arrows = []
    for edge in sorted(tuple(sorted(e)) for e in graph.edges()):
        a, b = edge
        xa, xb = graph.nodes[a].complex, graph.nodes[b].complex
        down, up = order_leq(xb, xa), order_leq(xa, xb)
        if down == up:
            raise InvariantViolation(f"mutation pair is not strictly comparable: {a} / {b}")
        arrows.append((a, b) if down else (b, a))
    graph.hasse_arrows = sorted(arrows)


def enumerate_sttilt(alg: BoundQuiverAlgebra, cap: int = DEFAULT_CAP, seed: int = 0) -> MutationGraph:
    """All basic support tau-tilting pairs, reached by mutation from A."""
    start = summands(TwoTermComplex.free(alg), seed)
    return _bfs(alg, start, cap, [], seed)


def freeze_enumerate(alg: BoundQuiverAlgebra, u_parts: Sequence[Summand], cap: int = DEFAULT_CAP, seed: int = 0) -> MutationGraph:
    """The interval of nodes having U as a summand, reached from its Bongartz completion."""
    start = bongartz_summands(alg, list(u_parts), seed)
    return _bfs(alg, start, cap, list(u_parts), seed)


def hasse(graph: MutationGraph) -> Poset:
    if not graph.complete:
        raise IncompleteGraph("the graph was truncated by the node cap")
    poset = Poset(graph.keys(), graph.hasse_arrows)
    if not poset.is_transitively_reduced():
        raise InvariantViolation("mutation arrows are not a transitive reduction")
    return poset


def order_interval(graph: MutationGraph, lower: TwoTermComplex, upper: TwoTermComplex) -> set[Key]:
    """Keys X with lower <= X <= upper, tested directly in the silting order."""
    return {
        k for k, node in graph.nodes.items() if order_leq(lower, node.complex) and order_leq(node.complex, upper)
    }


def load_parts(alg: BoundQuiverAlgebra, complexes: Sequence[TwoTermComplex], seed: int = 0) -> list[Summand]:
    out = []
    for x in complexes:
        out.extend(summands(x, seed))
    return sorted(out, key=lambda s: s.g)


def co_bongartz_key(alg: BoundQuiverAlgebra, u_parts: Sequence[Summand], seed: int = 0) -> Key:
    return key_of(co_bongartz_summands(alg, list(u_parts), seed))
