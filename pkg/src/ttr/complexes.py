"""Two-term complexes of projective modules, ``P^-1 -> P^0``.

A summand ``P_j`` of ``P^0`` and ``P_i`` of ``P^-1`` are linked by an
element of e_j A e_i: the map ``P_i -> P_j`` is left multiplication by it.
The differential is stored as an array of shape ``(len(p_zero),
len(p_minus1), dim A)`` of coefficient vectors, and composing maps is a
matrix product whose entries multiply as ``later * earlier``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import BoundQuiverAlgebra
from .representation import Morphism, Representation, direct_sum, injective, projective


def compose(alg: BoundQuiverAlgebra, g: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Matrix product ``g o d`` of maps between sums of projectives."""
    f = alg.field
    s, r, dim = g.shape
    r2, c, _ = d.shape
    if r != r2:
        raise ValueError("composition shape mismatch")
    if s == 0 or c == 0 or r == 0:
        return np.zeros((s, c, dim), dtype=np.int64)
    # y[r, c, u, w] = sum_v d[r, c, v] * mult[u, v, w]
    m = alg.mult.transpose(1, 0, 2).reshape(dim, dim * dim)
    y = f.matmul(d.reshape(r * c, dim), m).reshape(r, c, dim, dim)
    y = y.transpose(0, 2, 1, 3).reshape(r * dim, c * dim)
    out = f.matmul(g.reshape(s, r * dim), y)
    return out.reshape(s, c, dim)


def hom_basis_proj(alg: BoundQuiverAlgebra, src: Sequence[int], tgt: Sequence[int]) -> list[np.ndarray]:
    """Basis of Hom(sum P_src, sum P_tgt) as arrays ``(len(tgt), len(src), dim)``."""
    out = []
    for r, j in enumerate(tgt):
        for c, i in enumerate(src):
            for k in alg.between[(j, i)]:
                m = np.zeros((len(tgt), len(src), alg.dim), dtype=np.int64)
                m[r, c, k] = 1
                out.append(m)
    return out


def element_inverse(alg: BoundQuiverAlgebra, i: int, x: np.ndarray) -> np.ndarray:
    """Inverse of ``x`` in the local ring e_i A e_i (x must have unit e_i part)."""
    f = alg.field
    e = np.zeros(alg.dim, dtype=np.int64)
    e[alg.idempotent(i)] = 1
    y = f.solve(alg.left_mult_matrix(x), e)
    if y is None:
        raise ZeroDivisionError("element is not invertible")
    return y


@dataclass(frozen=True, eq=False)
class TwoTermComplex:
    alg: BoundQuiverAlgebra
    p_minus1: tuple[int, ...]
    p_zero: tuple[int, ...]
    diff: np.ndarray

    def __post_init__(self) -> None:
        shape = (len(self.p_zero), len(self.p_minus1), self.alg.dim)
        if self.diff.shape != shape:
            raise ValueError(f"differential has shape {self.diff.shape}, expected {shape}")

    @classmethod
    def stalk(cls, alg: BoundQuiverAlgebra, vertices: Sequence[int], degree: int = 0) -> "TwoTermComplex":
        vs = tuple(vertices)
        if degree == 0:
            return cls(alg, (), vs, np.zeros((len(vs), 0, alg.dim), dtype=np.int64))
        if degree == -1:
            return cls(alg, vs, (), np.zeros((0, len(vs), alg.dim), dtype=np.int64))
        raise ValueError("stalk complexes live in degree 0 or -1")

    @classmethod
    def free(cls, alg: BoundQuiverAlgebra, degree: int = 0) -> "TwoTermComplex":
        return cls.stalk(alg, range(1, alg.n + 1), degree)

    @classmethod
    def zero(cls, alg: BoundQuiverAlgebra) -> "TwoTermComplex":
        return cls.stalk(alg, ())

    def g_vector(self) -> tuple[int, ...]:
        g = [0] * self.alg.n
        for v in self.p_zero:
            g[v - 1] += 1
        for v in self.p_minus1:
            g[v - 1] -= 1
        return tuple(g)

    def is_zero(self) -> bool:
        return not self.p_zero and not self.p_minus1

    def is_minimal(self) -> bool:
        """No differential entry with a unit part (no contractible summand)."""
        for r, j in enumerate(self.p_zero):
            for c, i in enumerate(self.p_minus1):
                if i == j and self.diff[r, c, self.alg.idempotent(i)]:
                    return False
        return True

    def stalk_shift_vertices(self) -> list[int]:
        """Vertices of degree -1 summands whose differential column is zero."""
        return [i for c, i in enumerate(self.p_minus1) if not self.diff[:, c, :].any()]

    def to_payload(self) -> dict:
        entries = []
        for r, c in zip(*np.nonzero(self.diff.any(axis=2))):
            entries.append([int(r), int(c), [int(x) for x in self.diff[r, c]]])
        return {"p_minus1": list(self.p_minus1), "p_zero": list(self.p_zero), "diff": entries}

    @classmethod
    def from_payload(cls, alg: BoundQuiverAlgebra, payload: dict) -> "TwoTermComplex":
        pm, pz = tuple(payload["p_minus1"]), tuple(payload["p_zero"])
        diff = np.zeros((len(pz), len(pm), alg.dim), dtype=np.int64)
        for r, c, coeffs in payload["diff"]:
            diff[r, c] = coeffs
        return cls(alg, pm, pz, diff)

    def __repr__(self) -> str:
        return f"TwoTermComplex({list(self.p_minus1)} -> {list(self.p_zero)}, g={self.g_vector()})"


def direct_sum_complexes(alg: BoundQuiverAlgebra, parts: Sequence[TwoTermComplex]) -> TwoTermComplex:
    pm = tuple(v for x in parts for v in x.p_minus1)
    pz = tuple(v for x in parts for v in x.p_zero)
    diff = np.zeros((len(pz), len(pm), alg.dim), dtype=np.int64)
    ro = co = 0
    for x in parts:
        r, c = len(x.p_zero), len(x.p_minus1)
        diff[ro : ro + r, co : co + c] = x.diff
        ro += r
        co += c
    return TwoTermComplex(alg, pm, pz, diff)


def minimize(x: TwoTermComplex) -> TwoTermComplex:
    """Cancel contractible summands ``P -> P`` by elimination over A.

    An entry between equal projectives with a nonzero idempotent
    coefficient is a unit of e_i A e_i; the pair of summands it links splits
    off as a contractible complex and the rest is the Schur complement.
    """
    alg = x.alg
    pm, pz, d = list(x.p_minus1), list(x.p_zero), x.diff
    while True:
        hit = None
        for r, j in enumerate(pz):
            for c, i in enumerate(pm):
                if i == j and d[r, c, alg.idempotent(i)]:
                    hit = (r, c)
                    break
            if hit:
                break
        if hit is None:
            return TwoTermComplex(alg, tuple(pm), tuple(pz), d)
        r, c = hit
        inv = element_inverse(alg, pm[c], d[r, c])
        keep_r = [k for k in range(len(pz)) if k != r]
        keep_c = [k for k in range(len(pm)) if k != c]
        col = d[keep_r][:, [c]]
        row = d[[r]][:, keep_c]
        correction = compose(alg, compose(alg, col, inv.reshape(1, 1, -1)), row)
        d = np.mod(d[np.ix_(keep_r, keep_c)] - correction, alg.field.p)
        pm = [pm[k] for k in keep_c]
        pz = [pz[k] for k in keep_r]


# -- module-level realizations -------------------------------------------


def projective_sum(alg: BoundQuiverAlgebra, vertices: Sequence[int]) -> Representation:
    """sum_r P_{v_r}; at vertex l the basis is the concatenation of paths v_r -> l."""
    return direct_sum(alg, [projective(alg, v) for v in vertices])


def injective_sum(alg: BoundQuiverAlgebra, vertices: Sequence[int]) -> Representation:
    return direct_sum(alg, [injective(alg, v) for v in vertices])


def as_module_map(alg: BoundQuiverAlgebra, src: Sequence[int], tgt: Sequence[int], d: np.ndarray) -> Morphism:
    """The module homomorphism sum P_src -> sum P_tgt given by ``d``."""
    f = alg.field
    source, target = projective_sum(alg, src), projective_sum(alg, tgt)
    # prod[r, c, u, w]: coefficient of w in d[r, c] * u
    prod = f.matmul(d.reshape(-1, alg.dim), alg.mult.reshape(alg.dim, -1)).reshape(len(tgt), len(src), alg.dim, alg.dim)
    maps = []
    for l in range(1, alg.n + 1):
        rows = [(r, w) for r, j in enumerate(tgt) for w in alg.between[(j, l)]]
        cols = [(c, u) for c, i in enumerate(src) for u in alg.between[(i, l)]]
        m = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for a, (r, w) in enumerate(rows):
            for b, (c, u) in enumerate(cols):
                m[a, b] = prod[r, c, u, w]
        maps.append(m)
    return Morphism(source, target, maps)


def nakayama_map(alg: BoundQuiverAlgebra, src: Sequence[int], tgt: Sequence[int], d: np.ndarray) -> Morphism:
    """The Nakayama functor applied to ``d``: sum I_src -> sum I_tgt.

    A component ``P_i -> P_j`` given by left multiplication by x becomes
    ``I_i -> I_j``, ``phi -> phi(- * x)``.
    """
    f = alg.field
    source, target = injective_sum(alg, src), injective_sum(alg, tgt)
    # prod[r, c, y, w]: coefficient of w in y * d[r, c]
    prod = f.matmul(alg.mult.transpose(0, 2, 1).reshape(-1, alg.dim), d.reshape(-1, alg.dim).T)
    prod = prod.reshape(alg.dim, alg.dim, len(tgt), len(src)).transpose(2, 3, 0, 1)
    maps = []
    for l in range(1, alg.n + 1):
        rows = [(r, y) for r, j in enumerate(tgt) for y in alg.between[(l, j)]]
        cols = [(c, x) for c, i in enumerate(src) for x in alg.between[(l, i)]]
        m = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for a, (r, y) in enumerate(rows):
            for b, (c, x) in enumerate(cols):
                m[a, b] = prod[r, c, y, x]
        maps.append(m)
    return Morphism(source, target, maps)


def h0(x: TwoTermComplex) -> Representation:
    """The cokernel of the differential, as a representation."""
    mm = as_module_map(x.alg, x.p_minus1, x.p_zero, x.diff)
    quo, _ = mm.target.quotient(mm.maps)
    return quo
