"""Exact computations with support tau-tilting modules over bound quiver algebras."""

from .algebra import BoundQuiverAlgebra, build_algebra, parse_spec
from .complexes import TwoTermComplex, minimize
from .exactfield import PrimeField
from .exchange import MutationGraph, enumerate_sttilt, freeze_enumerate, hasse
from .modules import ext1_dim, hom_basis, hom_dim, indecomposable_summands, is_isomorphic, min_presentation, tau
from .poset import Poset, poset_isomorphic
from .reduction import ReductionReport, reduce, verify_against
from .representation import Representation, injective, projective, simple
from .silting import bongartz, co_bongartz, hom_shift1, is_presilting, mutate, order_leq

__all__ = [
    "BoundQuiverAlgebra",
    "MutationGraph",
    "Poset",
    "PrimeField",
    "ReductionReport",
    "Representation",
    "TwoTermComplex",
    "bongartz",
    "build_algebra",
    "co_bongartz",
    "enumerate_sttilt",
    "ext1_dim",
    "freeze_enumerate",
    "hasse",
    "hom_basis",
    "hom_dim",
    "hom_shift1",
    "indecomposable_summands",
    "injective",
    "is_isomorphic",
    "is_presilting",
    "min_presentation",
    "minimize",
    "mutate",
    "order_leq",
    "parse_spec",
    "poset_isomorphic",
    "projective",
    "reduce",
    "simple",
    "tau",
    "verify_against",
]
