"""Structural checks on an enumerated exchange graph.

Each check returns a list of human-readable violations; an empty list means
the property holds on every node or edge.
"""

from __future__ import annotations

from typing import Callable

from .exchange import MutationGraph, freeze_enumerate, hasse, order_interval
from .modules import _indecomposables_isomorphic, ext1_dim, in_fac
from .representation import Representation
from .silting import (
    assemble,
    bongartz_summands,
    co_bongartz_summands,
    exchanged_index,
    is_presilting,
    is_tau_rigid_pair,
    key_of,
    mutate_summands,
    order_leq,
)


def _fmt(key) -> str:
    return ";".join(",".join(map(str, g)) for g in key)


def check_regular(graph: MutationGraph) -> list[str]:
    n = graph.alg.n - len(graph.frozen)
    return [f"{_fmt(k)} has degree {graph.degree(k)}, expected {n}" for k in graph.keys() if graph.degree(k) != n]


def check_extrema(graph: MutationGraph) -> list[str]:
    """Unique maximum and minimum: the two completions of the frozen part.

    For an unfrozen graph these are A and A[1].
    """
    alg = graph.alg
    out = []
    top = key_of(bongartz_summands(alg, graph.u_parts))
    bottom = key_of(co_bongartz_summands(alg, graph.u_parts))
    if graph.maximum != [top]:
        out.append(f"maxima {[_fmt(k) for k in graph.maximum]} differ from {_fmt(top)}")
    if graph.minimum != [bottom]:
        out.append(f"minima {[_fmt(k) for k in graph.minimum]} differ from {_fmt(bottom)}")
    return out


def check_hasse(graph: MutationGraph) -> list[str]:
    out = []
    try:
        hasse(graph)
    except Exception as exc:  # noqa: BLE001 - reported as a violation
        out.append(str(exc))
    for a, b in graph.hasse_arrows:
        x, y = graph.nodes[a].complex, graph.nodes[b].complex
        if not order_leq(y, x) or order_leq(x, y):
            out.append(f"arrow {_fmt(a)} -> {_fmt(b)} is not strict")
    return out


def check_involution(graph: MutationGraph, seed: int = 0) -> list[str]:
    """Mutation is an involution on the exchange graph.

    Every recorded mutation is recomputed with both completions, which
    also checks that each almost complete complex has exactly two
    completions; the neighbor table must then be symmetric with the
    exchanged summand as the way back.
    """
    out = []
    for key in graph.keys():
        node = graph.nodes[key]
        for k, other in sorted(graph.neighbors[key].items()):
            forward = mutate_summands(graph.alg, node.parts, k, seed, strict=True)
            if key_of(forward) != other:
                out.append(f"mutation of {_fmt(key)} at {k} is not {_fmt(other)}")
                continue
            y = graph.nodes[other]
            back = graph.neighbors[other].get(exchanged_index(node.parts, y.parts))
            if back != key:
                out.append(f"mutating {_fmt(other)} back does not give {_fmt(key)}")
    return out


def check_rigidity(graph: MutationGraph) -> list[str]:
    """Module-level tau-rigidity agrees with presilting; tau-rigid implies rigid."""
    out = []
    for key in graph.keys():
        node = graph.nodes[key]
        module_level = is_tau_rigid_pair(node.module, node.support)
        if module_level != is_presilting(node.complex):
            out.append(f"{_fmt(key)}: module and complex rigidity disagree")
        if ext1_dim(node.module, node.module):
            out.append(f"{_fmt(key)}: Ext^1(M, M) is nonzero")
    return out


def check_sincere(graph: MutationGraph) -> list[str]:
    out = []
    for key in graph.keys():
        node = graph.nodes[key]
        if node.module.is_sincere() != (not node.support):
            out.append(f"{_fmt(key)}: sincere={node.module.is_sincere()} but support={sorted(node.support)}")
    return out


def fac_leq(m: Representation, n: Representation) -> bool:
    """Fac M inside Fac N: the supports nest and the trace of N in M is M."""
    return m.support() <= n.support() and in_fac(m, n)


def check_order_oracle(graph: MutationGraph) -> list[str]:
    """order_leq agrees with inclusion of the torsion classes Fac M."""
    out = []
    keys = graph.keys()
    for a in keys:
        for b in keys:
            x, y = graph.nodes[a], graph.nodes[b]
            if order_leq(x.complex, y.complex) != fac_leq(x.module, y.module):
                out.append(f"order of {_fmt(a)} and {_fmt(b)} disagrees with Fac inclusion")
    return out


def check_intervals(graph: MutationGraph, seed: int = 0) -> list[str]:
    """For each indecomposable summand U: nodes containing U form [co-Bongartz, Bongartz].

    Only meaningful on a full (unfrozen) graph; frozen graphs pass trivially.
    """
    if graph.frozen:
        return []
    out = []
    seen = {}
    for key in graph.keys():
        for part in graph.nodes[key].parts:
            seen.setdefault(part.g, part)
    alg = graph.alg
    for g, part in sorted(seen.items()):
        frozen = freeze_enumerate(alg, [part], len(graph.nodes) + 1, seed)
        containing = {k for k in graph.nodes if g in k}
        upper = assemble(alg, bongartz_summands(alg, [part], seed))
        lower = assemble(alg, co_bongartz_summands(alg, [part], seed))
        interval = order_interval(graph, lower, upper)
        if set(frozen.nodes) != containing or containing != interval:
            out.append(f"interval of {g}: frozen {len(frozen.nodes)}, containing {len(containing)}, order {len(interval)}")
    return out


def check_identity(graph: MutationGraph) -> list[str]:
    """Summands sharing a g-vector are isomorphic, so g-vector keys are faithful."""
    out = []
    first: dict = {}
    for key in graph.keys():
        for part in graph.nodes[key].parts:
            ref = first.setdefault(part.g, part)
            if ref is part:
                continue
            same = ref.shift_vertex == part.shift_vertex and (
                part.shift_vertex is not None or _indecomposables_isomorphic(ref.module, part.module)
            )
            if not same:
                out.append(f"two non-isomorphic summands share g-vector {part.g}")
    return out


CHECKS: dict[str, Callable[[MutationGraph], list[str]]] = {
    "regular": check_regular,
    "extrema": check_extrema,
    "hasse": check_hasse,
    "involution": check_involution,
    "rigidity": check_rigidity,
    "sincere": check_sincere,
    "intervals": check_intervals,
    "order": check_order_oracle,
    "identity": check_identity,
}


def run_checks(graph: MutationGraph, names: list[str] | None = None) -> dict[str, list[str]]:
    return {name: CHECKS[name](graph) for name in (names or list(CHECKS))}
