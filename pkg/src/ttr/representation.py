"""Finite-dimensional right modules as quiver representations.

A module stores one vector space per vertex (as a dimension) and one
matrix per arrow, of shape ``(dims[target], dims[source])``. Vectors are
columns. Vertices are 1-based in every public signature.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .algebra import BoundQuiverAlgebra, Path
from .errors import AlgebraMismatch


class Representation:
    def __init__(self, alg: BoundQuiverAlgebra, dims: Sequence[int], maps: Sequence[np.ndarray] | None = None):
        self.alg = alg
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != alg.n:
            raise ValueError(f"expected {alg.n} dimensions, got {len(self.dims)}")
        arrows = alg.quiver.arrows
        if maps is None:
            maps = [np.zeros((self.dims[a.target - 1], self.dims[a.source - 1]), dtype=np.int64) for a in arrows]
        self.maps = tuple(np.mod(np.asarray(m, dtype=np.int64), alg.field.p) for m in maps)
        for a, m in zip(arrows, self.maps):
            if m.shape != (self.dims[a.target - 1], self.dims[a.source - 1]):
                raise ValueError(f"arrow {a.label}: map has shape {m.shape}")

    def dim(self, i: int) -> int:
        return self.dims[i - 1]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def is_sincere(self) -> bool:
        return all(d > 0 for d in self.dims)

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, d in enumerate(self.dims) if d)

    def path_matrix(self, path: Path) -> np.ndarray:
        f = self.alg.field
        out = np.eye(self.dim(path.source), dtype=np.int64)
        for k in path.arrows:
            out = f.matmul(self.maps[k], out)
        return out

    @cached_property
    def actions(self) -> list[np.ndarray]:
        """Matrix of each algebra basis element, ``M_source -> M_target``."""
        return [self.path_matrix(b) for b in self.alg.basis]

    def element_matrix(self, source: int, target: int, coeffs: np.ndarray) -> np.ndarray:
        """Action ``M_source -> M_target`` of an element of e_source A e_target."""
        f = self.alg.field
        out = np.zeros((self.dim(target), self.dim(source)), dtype=np.int64)
        for k in self.alg.between[(source, target)]:
            if coeffs[k]:
                out = (out + coeffs[k] * self.actions[k]) % f.p
        return out

    def satisfies_relations(self) -> bool:
        f = self.alg.field
        for terms in self.alg.relations:
            if not terms:
                continue
            src, tgt = terms[0][1].source, terms[0][1].target
            acc = np.zeros((self.dim(tgt), self.dim(src)), dtype=np.int64)
            for c, path in terms:
                acc = (acc + c * self.path_matrix(path)) % f.p
            if acc.any():
                return False
        return True

    def same_algebra(self, other: "Representation") -> None:
        if other.alg is not self.alg:
            raise AlgebraMismatch("modules live over different algebras")

    # -- building new modules ----------------------------------------------

    def submodule(self, bases: Sequence[np.ndarray]) -> tuple["Representation", "Morphism"]:
        """Restrict to subspaces given by column bases closed under the arrows."""
        f = self.alg.field
        maps = []
        for a, m in zip(self.alg.quiver.arrows, self.maps):
            s, t = bases[a.source - 1], bases[a.target - 1]
            img = f.matmul(m, s)
            if img.shape[1] == 0 or t.shape[1] == 0:
                maps.append(np.zeros((t.shape[1], s.shape[1]), dtype=np.int64))
                continue
            x = f.solve(t, img)
            if x is None:
                raise ValueError("subspaces are not closed under the arrow maps")
            maps.append(x)
        sub = Representation(self.alg, [b.shape[1] for b in bases], maps)
        return sub, Morphism(sub, self, [b.copy() for b in bases])

    def quotient(self, spans: Sequence[np.ndarray]) -> tuple["Representation", "Morphism"]:
        """Quotient by the submodule spanned per vertex by the given columns.

        The quotient basis is the standard complement chosen by
        :meth:`PrimeField.complement`; the returned morphism is the projection.
        """
        f = self.alg.field
        subs, comps, projs = [], [], []
        for i, span in enumerate(spans):
            d = self.dims[i]
            basis = f.col_space(span) if span.size else np.zeros((d, 0), dtype=np.int64)
            comp = f.complement(basis, d)
            full = np.concatenate([comp, basis], axis=1)
            # coordinates w.r.t. [complement | sub]; keep the complement rows
            inv = f.inverse(full) if d else np.zeros((0, 0), dtype=np.int64)
            subs.append(basis)
            comps.append(comp)
            projs.append(inv[: comp.shape[1]])
        maps = []
        for a, m in zip(self.alg.quiver.arrows, self.maps):
            maps.append(f.matmul(projs[a.target - 1], f.matmul(m, comps[a.source - 1])))
        quo = Representation(self.alg, [c.shape[1] for c in comps], maps)
        return quo, Morphism(self, quo, projs)

    def radical_spans(self) -> list[np.ndarray]:
        """Per vertex, the span of images of all arrows ending there."""
        cols: list[list[np.ndarray]] = [[] for _ in range(self.alg.n)]
        for a, m in zip(self.alg.quiver.arrows, self.maps):
            if m.size:
                cols[a.target - 1].append(m)
        out = []
        for i, c in enumerate(cols):
            out.append(np.concatenate(c, axis=1) if c else np.zeros((self.dims[i], 0), dtype=np.int64))
        return out

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Representation
    target: Representation
    maps: tuple[np.ndarray, ...] | list[np.ndarray]

    def compose(self, before: "Morphism") -> "Morphism":
        """``self o before``."""
        f = self.source.alg.field
        return Morphism(before.source, self.target, [f.matmul(a, b) for a, b in zip(self.maps, before.maps)])

    def is_chain_map(self) -> bool:
        f = self.source.alg.field
        for a, ms, mt in zip(self.source.alg.quiver.arrows, self.source.maps, self.target.maps):
            lhs = f.matmul(mt, self.maps[a.source - 1])
            rhs = f.matmul(self.maps[a.target - 1], ms)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_iso(self) -> bool:
        f = self.source.alg.field
        return all(m.shape[0] == m.shape[1] and f.rank(m) == m.shape[0] for m in self.maps)

    def is_zero(self) -> bool:
        return not any(m.any() for m in self.maps)

    def image_spans(self) -> list[np.ndarray]:
        return list(self.maps)

    def flat(self) -> np.ndarray:
        return np.concatenate([m.ravel() for m in self.maps]) if self.maps else np.zeros(0, dtype=np.int64)


def identity(m: Representation) -> Morphism:
    return Morphism(m, m, [np.eye(d, dtype=np.int64) for d in m.dims])


def zero_module(alg: BoundQuiverAlgebra) -> Representation:
    return Representation(alg, [0] * alg.n)


def simple(alg: BoundQuiverAlgebra, i: int) -> Representation:
    dims = [0] * alg.n
    dims[i - 1] = 1
    return Representation(alg, dims)


def _right_mult_block(alg: BoundQuiverAlgebra, v: int, arrow: int) -> np.ndarray:
    """Right multiplication by an arrow on paths starting at ``v``."""
    a = alg.quiver.arrows[arrow]
    src, tgt = alg.between[(v, a.source)], alg.between[(v, a.target)]
    k = alg.basis_index[Path(a.source, a.target, (arrow,))]
    out = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for col, u in enumerate(src):
        prod = alg.mult[u, k]
        out[:, col] = prod[tgt]
    return out


def projective(alg: BoundQuiverAlgebra, i: int) -> Representation:
    """The right module e_i A; the basis at vertex j is the paths i -> j."""
    cache = alg.__dict__.setdefault("_projectives", {})
    if i not in cache:
        dims = [len(alg.between[(i, j)]) for j in range(1, alg.n + 1)]
        maps = [_right_mult_block(alg, i, k) for k in range(len(alg.quiver.arrows))]
        cache[i] = Representation(alg, dims, maps)
    return cache[i]


def injective(alg: BoundQuiverAlgebra, i: int) -> Representation:
    """D(A e_i); the basis at vertex j is dual to the paths j -> i."""
    cache = alg.__dict__.setdefault("_injectives", {})
    if i not in cache:
        dims = [len(alg.between[(j, i)]) for j in range(1, alg.n + 1)]
        maps = []
        for k, a in enumerate(alg.quiver.arrows):
            src, tgt = alg.between[(a.source, i)], alg.between[(a.target, i)]
            ka = alg.basis_index[Path(a.source, a.target, (k,))]
            m = np.zeros((len(tgt), len(src)), dtype=np.int64)
            for row, x in enumerate(tgt):
                m[row, :] = alg.mult[ka, x][src]
            maps.append(m)
        cache[i] = Representation(alg, dims, maps)
    return cache[i]


def direct_sum(alg: BoundQuiverAlgebra, reps: Sequence[Representation]) -> Representation:
    if not reps:
        return zero_module(alg)
    dims = [sum(r.dims[i] for r in reps) for i in range(alg.n)]
    maps = []
    for k, a in enumerate(alg.quiver.arrows):
        m = np.zeros((dims[a.target - 1], dims[a.source - 1]), dtype=np.int64)
        ro = co = 0
        for r in reps:
            blk = r.maps[k]
            m[ro : ro + blk.shape[0], co : co + blk.shape[1]] = blk
            ro += blk.shape[0]
            co += blk.shape[1]
        maps.append(m)
    return Representation(alg, dims, maps)


def free_module(alg: BoundQuiverAlgebra) -> Representation:
    """A itself, as P_1 + ... + P_n."""
    return direct_sum(alg, [projective(alg, i) for i in range(1, alg.n + 1)])
