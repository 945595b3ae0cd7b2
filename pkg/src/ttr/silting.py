"""Two-term presilting complexes: Hom in the homotopy category, completions,
mutation and the silting order.

Every complex handled here is kept minimal. A minimal complex splits as the
minimal presentation of its H^0 plus stalks P_i[1], so its indecomposable
summands are read off from the Krull-Schmidt decomposition of H^0 together
with the leftover degree -1 projectives.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import BoundQuiverAlgebra
from .complexes import TwoTermComplex, compose, direct_sum_complexes, h0, minimize
from .errors import AlgebraMismatch, MutationInvariantViolation, NotMinimal, NotPresilting, SupportViolation
from .modules import (
    hom_dim,
    in_fac,
    indecomposable_summands,
    min_presentation,
    tau,
)
from .representation import Representation, direct_sum, projective, zero_module

GVector = tuple[int, ...]
Key = tuple[GVector, ...]


# -- Hom in the homotopy category ------------------------------------------


def _valid_coords(alg: BoundQuiverAlgebra, src: Sequence[int], tgt: Sequence[int]) -> list[int]:
    """Flat indices of ``(len(tgt), len(src), dim)`` arrays inside Hom(P_src, P_tgt)."""
    out = []
    for r, j in enumerate(tgt):
        for c, i in enumerate(src):
            base = (r * len(src) + c) * alg.dim
            out.extend(base + k for k in alg.between[(j, i)])
    return out


def _left_images(alg: BoundQuiverAlgebra, tgt: Sequence[int], mid: Sequence[int], d: np.ndarray) -> list[np.ndarray]:
    """Images ``s o d`` for ``s`` running over a basis of Hom(P_mid, P_tgt)."""
    f = alg.field
    out = []
    if d.size == 0:
        return out
    # lm[k, m, c, w] = coefficient of w in path_k * d[m, c]
    lm = f.matmul(alg.mult.transpose(0, 2, 1).reshape(-1, alg.dim), d.reshape(-1, alg.dim).T)
    lm = lm.reshape(alg.dim, alg.dim, d.shape[0], d.shape[1]).transpose(0, 2, 3, 1)
    for r, j in enumerate(tgt):
        for m, i in enumerate(mid):
            for k in alg.between[(j, i)]:
                img = np.zeros((len(tgt), d.shape[1], alg.dim), dtype=np.int64)
                img[r] = lm[k, m]
                out.append(img.ravel())
    return out


def _right_images(alg: BoundQuiverAlgebra, mid: Sequence[int], src: Sequence[int], d: np.ndarray) -> list[np.ndarray]:
    """Images ``d o t`` for ``t`` running over a basis of Hom(P_src, P_mid)."""
    f = alg.field
    out = []
    if d.size == 0:
        return out
    # rm[k, r, m, w] = coefficient of w in d[r, m] * path_k
    rm = f.matmul(d.reshape(-1, alg.dim), alg.mult.reshape(alg.dim, -1))
    rm = rm.reshape(d.shape[0], d.shape[1], alg.dim, alg.dim).transpose(2, 0, 1, 3)
    for m, j in enumerate(mid):
        for c, i in enumerate(src):
            for k in alg.between[(j, i)]:
                img = np.zeros((d.shape[0], len(src), alg.dim), dtype=np.int64)
                img[:, c] = rm[k, :, m]
                out.append(img.ravel())
    return out


def _quotient(alg: BoundQuiverAlgebra, shape: tuple[int, int], valid: list[int], gens: list[np.ndarray]) -> list[np.ndarray]:
    f = alg.field
    if gens:
        sub = np.array(gens, dtype=np.int64)[:, valid].T
    else:
        sub = np.zeros((len(valid), 0), dtype=np.int64)
    comp = f.complement(sub, len(valid)) if valid else np.zeros((0, 0), dtype=np.int64)
    reps = []
    for j in range(comp.shape[1]):
        flat = np.zeros(shape[0] * shape[1] * alg.dim, dtype=np.int64)
        flat[valid] = comp[:, j]
        reps.append(flat.reshape(shape[0], shape[1], alg.dim))
    return reps


def hom_shift1(x: TwoTermComplex, y: TwoTermComplex) -> tuple[int, list[np.ndarray]]:
    """Hom_K(X, Y[1]) as Hom(X^-1, Y^0) modulo maps s o d_X + d_Y o t.

    Returns:
        The dimension and coset representatives, each an array
        ``(len(Y^0), len(X^-1), dim A)``.
    """
    if x.alg is not y.alg:
        raise AlgebraMismatch("complexes live over different algebras")
    alg = x.alg
    valid = _valid_coords(alg, x.p_minus1, y.p_zero)
    if not valid:
        return 0, []
    gens = _left_images(alg, y.p_zero, x.p_zero, x.diff) + _right_images(alg, y.p_minus1, x.p_minus1, y.diff)
    reps = _quotient(alg, (len(y.p_zero), len(x.p_minus1)), valid, gens)
    return len(reps), reps


def hom_k(x: TwoTermComplex, y: TwoTermComplex) -> int:
    """dim Hom_K(X, Y) for two-term complexes."""
    alg = x.alg
    f = alg.field
    # chain maps (a, b): d_Y a - b d_X = 0
    cols = []
    for m in _unit_maps(alg, x.p_minus1, y.p_minus1):
        cols.append(_compose_flat(alg, y.diff, m))
    for m in _unit_maps(alg, x.p_zero, y.p_zero):
        cols.append(-_compose_flat(alg, m, x.diff) % f.p)
    if not cols:
        return 0
    system = np.array(cols, dtype=np.int64).T
    chain = system.shape[1] - f.rank(system)
    # null-homotopic maps (h d_X, d_Y h) for h: X^0 -> Y^-1
    hom_gens = []
    for h in _unit_maps(alg, x.p_zero, y.p_minus1):
        a = _compose_flat(alg, h, x.diff)
        b = _compose_flat(alg, y.diff, h)
        hom_gens.append(np.concatenate([a, b]))
    nh = f.rank(np.array(hom_gens).T) if hom_gens else 0
    return chain - nh


def _unit_maps(alg: BoundQuiverAlgebra, src: Sequence[int], tgt: Sequence[int]) -> list[np.ndarray]:
    out = []
    for r, j in enumerate(tgt):
        for c, i in enumerate(src):
            for k in alg.between[(j, i)]:
                m = np.zeros((len(tgt), len(src), alg.dim), dtype=np.int64)
                m[r, c, k] = 1
                out.append(m)
    return out


def _compose_flat(alg: BoundQuiverAlgebra, g: np.ndarray, d: np.ndarray) -> np.ndarray:
    return compose(alg, g, d).ravel()


def is_presilting(x: TwoTermComplex) -> bool:
    return hom_shift1(x, x)[0] == 0


def order_leq(x: TwoTermComplex, y: TwoTermComplex) -> bool:
    """X <= Y in the silting order, i.e. Hom_K(Y, X[1]) = 0."""
    return hom_shift1(y, x)[0] == 0


# -- summands --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Summand:
    """An indecomposable two-term complex together with its H^0."""

    complex: TwoTermComplex
    module: Representation
    shift_vertex: int | None = None

    @property
    def g(self) -> GVector:
        return self.complex.g_vector()

    def same_as(self, other: "Summand") -> bool:
        """Equality up to isomorphism for summands of presilting complexes.

        Indecomposable presilting complexes are determined by their
        g-vectors, so no module isomorphism test is needed.
        """
        return self.g == other.g


def shifted_projective(alg: BoundQuiverAlgebra, i: int) -> Summand:
    return Summand(TwoTermComplex.stalk(alg, [i], -1), zero_module(alg), i)


def summands(x: TwoTermComplex, seed: int = 0) -> list[Summand]:
    """Indecomposable summands of a minimal complex, sorted by g-vector."""
    if not x.is_minimal():
        raise NotMinimal("complex has a contractible summand; minimize it first")
    alg = x.alg
    out = []
    leftover = Counter(x.p_minus1)
    for part in indecomposable_summands(h0(x), seed):
        pres = min_presentation(part)
        leftover.subtract(pres.p_minus1)
        out.append(Summand(pres, part))
    if any(v < 0 for v in leftover.values()):
        raise NotMinimal("degree -1 term does not cover the presentations of H^0")
    for v in sorted(leftover.elements()):
        out.append(shifted_projective(alg, v))
    return sorted(out, key=lambda s: s.g)


def basic_reduct(parts: Iterable[Summand]) -> list[Summand]:
    out: list[Summand] = []
    for s in parts:
        if not any(s.same_as(t) for t in out):
            out.append(s)
    return sorted(out, key=lambda s: s.g)


def assemble(alg: BoundQuiverAlgebra, parts: Sequence[Summand]) -> TwoTermComplex:
    return direct_sum_complexes(alg, [s.complex for s in parts])


def key_of(parts: Sequence[Summand]) -> Key:
    return tuple(sorted(s.g for s in parts))


def g_vectors(x: TwoTermComplex, seed: int = 0) -> list[GVector]:
    return sorted(s.g for s in summands(x, seed))


# -- the module <-> complex dictionary ------------------------------------


@dataclass
class SttiltPair:
    """A tau-rigid pair (M, P) with P = sum of P_i over ``support``."""

    module: Representation
    support: frozenset[int]
    complex: TwoTermComplex
    g_vectors: list[GVector] = field(default_factory=list)


def pair_to_complex(m: Representation, support: Iterable[int] = ()) -> TwoTermComplex:
    support = sorted(set(support))
    for i in support:
        if m.dim(i):
            raise SupportViolation(f"Hom(P_{i}, M) is nonzero")
    return direct_sum_complexes(m.alg, [min_presentation(m), TwoTermComplex.stalk(m.alg, support, -1)])


def complex_to_pair(x: TwoTermComplex, seed: int = 0) -> SttiltPair:
    parts = summands(x, seed)
    support = frozenset(s.shift_vertex for s in parts if s.shift_vertex is not None)
    return SttiltPair(h0(x), support, x, sorted(s.g for s in parts))


def is_tau_rigid_pair(m: Representation, support: Iterable[int]) -> bool:
    """Module-level test: Hom(M, tau M) = 0 and Hom(P_i, M) = 0 on the support."""
    if any(m.dim(i) for i in support):
        return False
    return hom_dim(m, tau(m)) == 0


# -- completions and mutation ----------------------------------------------


def _hom_from_free(y: TwoTermComplex) -> list[np.ndarray]:
    """Coset representatives of Hom_K(A, Y) as maps A -> Y^0."""
    alg = y.alg
    free = tuple(range(1, alg.n + 1))
    valid = _valid_coords(alg, free, y.p_zero)
    if not valid:
        return []
    gens = _right_images(alg, y.p_minus1, free, y.diff)
    return _quotient(alg, (len(y.p_zero), alg.n), valid, gens)


def _check_presilting(parts: Sequence[Summand], alg: BoundQuiverAlgebra) -> None:
    if parts and not is_presilting(assemble(alg, parts)):
        raise NotPresilting("complex is not presilting")


def bongartz_summands(alg: BoundQuiverAlgebra, parts: Sequence[Summand], seed: int = 0, check: bool = True) -> list[Summand]:
    """Basic summands of the Bongartz completion X_U + U.

    X_U is the middle term of A -> X_U -> U' -> A[1], where U' -> A[1] is
    the universal map built from a basis of Hom_K(U, A[1]).
    """
    if check:
        _check_presilting(parts, alg)
    free = TwoTermComplex.free(alg)
    blocks = []
    for s in parts:
        _, reps = hom_shift1(s.complex, free)
        blocks.extend((s.complex, h) for h in reps)
    pm = tuple(v for c, _ in blocks for v in c.p_minus1)
    pz = tuple(v for c, _ in blocks for v in c.p_zero) + free.p_zero
    diff = np.zeros((len(pz), len(pm), alg.dim), dtype=np.int64)
    ro = co = 0
    for c, h in blocks:
        r, w = len(c.p_zero), len(c.p_minus1)
        diff[ro : ro + r, co : co + w] = c.diff
        diff[len(pz) - alg.n :, co : co + w] = h
        ro += r
        co += w
    middle = minimize(TwoTermComplex(alg, pm, pz, diff))
    return basic_reduct(list(summands(middle, seed)) + list(parts))


def co_bongartz_summands(alg: BoundQuiverAlgebra, parts: Sequence[Summand], seed: int = 0, check: bool = True) -> list[Summand]:
    """Basic summands of U + Y where A -> U'' -> Y -> A[1] and A -> U'' is
    the universal left approximation from a basis of Hom_K(A, U)."""
    if check:
        _check_presilting(parts, alg)
    blocks = []
    for s in parts:
        blocks.extend((s.complex, g) for g in _hom_from_free(s.complex))
    free = tuple(range(1, alg.n + 1))
    pm = free + tuple(v for c, _ in blocks for v in c.p_minus1)
    pz = tuple(v for c, _ in blocks for v in c.p_zero)
    diff = np.zeros((len(pz), len(pm), alg.dim), dtype=np.int64)
    ro, co = 0, alg.n
    for c, g in blocks:
        r, w = len(c.p_zero), len(c.p_minus1)
        diff[ro : ro + r, :alg.n] = g
        diff[ro : ro + r, co : co + w] = c.diff
        ro += r
        co += w
    cone = minimize(TwoTermComplex(alg, pm, pz, diff))
    return basic_reduct(list(parts) + list(summands(cone, seed)))


def _as_parts(x: TwoTermComplex, seed: int) -> list[Summand]:
    return basic_reduct(summands(minimize(x), seed))


def bongartz(u: TwoTermComplex, seed: int = 0) -> TwoTermComplex:
    parts = _as_parts(u, seed)
    return assemble(u.alg, bongartz_summands(u.alg, parts, seed))


def co_bongartz(u: TwoTermComplex, seed: int = 0) -> TwoTermComplex:
    parts = _as_parts(u, seed)
    return assemble(u.alg, co_bongartz_summands(u.alg, parts, seed))


def mutate_summands(alg: BoundQuiverAlgebra, parts: Sequence[Summand], k: int, seed: int = 0, strict: bool = False) -> list[Summand]:
    """Replace summand ``k`` of a basic silting complex by its complement.

    The removed summand X decides which completion of the rest U is the
    input: if H^0(X) lies in Fac H^0(U) the input is the smaller completion
    and the mutation goes up, otherwise it goes down. With ``strict`` both
    completions are built and checked against the input.
    """
    rest = [s for j, s in enumerate(parts) if j != k]
    here = key_of(parts)
    if strict:
        top = bongartz_summands(alg, rest, seed, check=False)
        bottom = co_bongartz_summands(alg, rest, seed, check=False)
        hi, lo = key_of(top), key_of(bottom)
        if len(top) != alg.n or len(bottom) != alg.n:
            raise MutationInvariantViolation("a completion does not have n summands")
        if hi == lo:
            raise MutationInvariantViolation("the two completions coincide")
        if here == hi:
            return bottom
        if here == lo:
            return top
        raise MutationInvariantViolation("neither completion is the input")
    u_module = direct_sum(alg, [s.module for s in rest])
    goes_up = in_fac(parts[k].module, u_module)
    out = (bongartz_summands if goes_up else co_bongartz_summands)(alg, rest, seed, check=False)
    if len(out) != alg.n or key_of(out) == here:
        raise MutationInvariantViolation("mutation did not produce a new silting complex")
    return out


def mutate(x: TwoTermComplex, k: int, seed: int = 0) -> TwoTermComplex:
    """Mutate at the ``k``-th indecomposable summand (in g-vector order)."""
    parts = summands(x, seed)
    if len(basic_reduct(parts)) != len(parts):
        raise MutationInvariantViolation("mutation needs a basic complex")
    return assemble(x.alg, mutate_summands(x.alg, parts, k, seed))


def exchanged_index(before: Sequence[Summand], after: Sequence[Summand]) -> int:
    """Index in ``after`` of the summand not present in ``before``."""
    old = Counter(s.g for s in before)
    for j, s in enumerate(after):
        if old[s.g] == 0:
            return j
    raise MutationInvariantViolation("mutation did not exchange a summand")
