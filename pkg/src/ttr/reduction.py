"""Reduction of the support tau-tilting poset at a presilting complex U.

The nodes containing U form an interval whose top is the Bongartz
completion T_U. The reduced algebra C = End(T_U)/<e_U> is never presented
by generators and relations; it is measured by its dimension, computed
once as End(T)/[U] and once as Hom(T, fT), and compared with a candidate
algebra through the poset of its support tau-tilting modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import BoundQuiverAlgebra
from .complexes import TwoTermComplex, minimize
from .errors import AlgebraMismatch, DimCMismatch, IncompleteGraph, IncompleteInterval, InvariantViolation, NotPresilting
from .exchange import DEFAULT_CAP, MutationGraph, enumerate_sttilt, freeze_enumerate, hasse
from .modules import hom_basis, hom_dim, tau, torsion_parts
from .poset import Poset, poset_isomorphic
from .representation import Representation, direct_sum
from .silting import (
    Key,
    Summand,
    assemble,
    basic_reduct,
    bongartz_summands,
    co_bongartz_summands,
    is_presilting,
    key_of,
    summands,
)


def tau_perp_member(u: Representation, m: Representation) -> bool:
    """M lies in the left perpendicular of tau U and the right perpendicular of U."""
    u.same_algebra(m)
    if m.is_zero():
        return True
    return hom_dim(m, tau(u)) == 0 and hom_dim(u, m) == 0


def _u_parts(alg: BoundQuiverAlgebra, u: TwoTermComplex, seed: int) -> list[Summand]:
    if u.alg is not alg:
        raise AlgebraMismatch("U is a complex over a different algebra")
    if not is_presilting(u):
        raise NotPresilting("U is not presilting")
    return basic_reduct(summands(minimize(u), seed))


def _modules(alg: BoundQuiverAlgebra, parts: list[Summand]) -> Representation:
    return direct_sum(alg, [s.module for s in parts])


def _bongartz_module(alg: BoundQuiverAlgebra, parts: list[Summand], seed: int) -> Representation:
    return _modules(alg, bongartz_summands(alg, parts, seed, check=False))


def _ideal_dim(t: Representation, u: Representation) -> int:
    """dim of the span of all g o f with f: T -> U and g: U -> T."""
    fs, gs = hom_basis(t, u), hom_basis(u, t)
    if not fs or not gs:
        return 0
    rows = [g.compose(f).flat() for g in gs for f in fs]
    return t.alg.field.rank(np.array(rows, dtype=np.int64))


def dim_c_endo(alg: BoundQuiverAlgebra, u: TwoTermComplex, seed: int = 0) -> int:
    """dim End(T) minus the dimension of the ideal of maps factoring through U."""
    parts = _u_parts(alg, u, seed)
    t = _bongartz_module(alg, parts, seed)
    return hom_dim(t, t) - _ideal_dim(t, _modules(alg, parts))


def dim_c_torsionfree(alg: BoundQuiverAlgebra, u: TwoTermComplex, seed: int = 0) -> int:
    """dim Hom(T, fT) for the torsion pair (Fac U, U-perp)."""
    parts = _u_parts(alg, u, seed)
    t = _bongartz_module(alg, parts, seed)
    return hom_dim(t, torsion_parts(_modules(alg, parts), t).torsion_free)


@dataclass
class ReductionReport:
    u_parts: list[Summand]
    bongartz_key: Key
    cobongartz_key: Key
    interval: MutationGraph
    dim_c_endo: int
    dim_c_torsionfree: int
    poset: Poset | None
    reduced_dims: dict[Key, int] = field(default_factory=dict)

    @property
    def dim_c(self) -> int:
        return self.dim_c_endo

    @property
    def size(self) -> int:
        return len(self.interval.nodes)


def reduce(alg: BoundQuiverAlgebra, u: TwoTermComplex, cap: int = DEFAULT_CAP, seed: int = 0) -> ReductionReport:
    """Interval of nodes containing U, with both dim C values and per-node data.

    Raises:
        IncompleteInterval: the interval has more than ``cap`` nodes; the
            partial report is attached as ``err.report``.
        DimCMismatch: the two computations of dim C disagree.
    """
    parts = _u_parts(alg, u, seed)
    top = bongartz_summands(alg, parts, seed, check=False)
    bottom = co_bongartz_summands(alg, parts, seed, check=False)
    u_mod = _modules(alg, parts)
    t = _modules(alg, top)
    via_endo = hom_dim(t, t) - _ideal_dim(t, u_mod)
    via_tf = hom_dim(t, torsion_parts(u_mod, t).torsion_free)
    if via_endo != via_tf:
        raise DimCMismatch(f"dim C is {via_endo} via End(T)/[U] but {via_tf} via Hom(T, fT)")
    graph = freeze_enumerate(alg, parts, cap, seed)
    report = ReductionReport(parts, key_of(top), key_of(bottom), graph, via_endo, via_tf, None)
    for key, node in graph.nodes.items():
        f_m = torsion_parts(u_mod, node.module).torsion_free
        report.reduced_dims[key] = hom_dim(t, f_m)
    if not graph.complete:
        err = IncompleteInterval(f"interval exceeds the node cap {cap}")
        err.report = report
        raise err
    report.poset = hasse(graph)
    if report.poset.maxima() != [report.bongartz_key] or report.poset.minima() != [report.cobongartz_key]:
        raise InvariantViolation("interval bounds differ from the two completions of U")
    return report


@dataclass(frozen=True)
class Verdict:
    poset_iso: bool
    count_match: bool
    dim_match: bool

    @property
    def ok(self) -> bool:
        return self.poset_iso and self.count_match and self.dim_match


def verify_against(report: ReductionReport, c_alg: BoundQuiverAlgebra, cap: int = DEFAULT_CAP, seed: int = 0) -> Verdict:
    """Compare the interval with the full poset of a candidate algebra C."""
    graph = enumerate_sttilt(c_alg, cap, seed)
    if not graph.complete:
        raise IncompleteGraph(f"the candidate algebra has more than {cap} nodes")
    poset = hasse(graph)
    iso = report.poset is not None and poset_isomorphic(report.poset, poset) is not None
    return Verdict(iso, len(graph.nodes) == report.size, c_alg.dim == report.dim_c)


def interval_node_complex(report: ReductionReport, key: Key) -> TwoTermComplex:
    node = report.interval.nodes[key]
    return assemble(report.interval.alg, node.parts)
