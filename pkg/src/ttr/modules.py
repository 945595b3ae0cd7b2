"""Homological computations on representations.

Hom spaces, isomorphism tests, Krull-Schmidt decomposition, minimal
projective presentations, the Auslander-Reiten translate, Ext^1,
annihilators and the torsion / torsion-free parts for the pair
(Fac U, U^perp).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor
from sympy.polys.matrices import DomainMatrix
from sympy import GF

from .complexes import TwoTermComplex, as_module_map, nakayama_map, projective_sum
from .errors import DecompositionFailure
from .representation import Morphism, Representation, direct_sum, identity

RETRY_BUDGET = 32
EXHAUSTIVE_LIMIT = 20_000


# -- Hom spaces -----------------------------------------------------------


def _hom_system(m: Representation, n: Representation) -> tuple[np.ndarray, list[int]]:
    """Linear conditions on the stacked vertex maps of a homomorphism M -> N."""
    alg = m.alg
    f = alg.field
    sizes = [n.dims[i] * m.dims[i] for i in range(alg.n)]
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    blocks = []
    for a, ma, na in zip(alg.quiver.arrows, m.maps, n.maps):
        s, t = a.source - 1, a.target - 1
        rows = n.dims[t] * m.dims[s]
        if rows == 0:
            continue
        block = np.zeros((rows, offsets[-1]), dtype=np.int64)
        # N_a F_s - F_t M_a = 0 with row-major vec(F)
        block[:, offsets[s] : offsets[s + 1]] += np.kron(na, np.eye(m.dims[s], dtype=np.int64))
        block[:, offsets[t] : offsets[t + 1]] -= np.kron(np.eye(n.dims[t], dtype=np.int64), ma.T)
        blocks.append(block % f.p)
    if blocks:
        system = np.concatenate(blocks)
    else:
        system = np.zeros((0, offsets[-1]), dtype=np.int64)
    return system, offsets


def hom_basis(m: Representation, n: Representation) -> list[Morphism]:
    """A basis of Hom_A(M, N); the order is fixed by the nullspace convention."""
    m.same_algebra(n)
    alg = m.alg
    system, offsets = _hom_system(m, n)
    null = alg.field.nullspace(system)
    out = []
    for j in range(null.shape[1]):
        v = null[:, j]
        maps = [v[offsets[i] : offsets[i + 1]].reshape(n.dims[i], m.dims[i]) for i in range(alg.n)]
        out.append(Morphism(m, n, maps))
    return out


def hom_dim(m: Representation, n: Representation) -> int:
    m.same_algebra(n)
    system, offsets = _hom_system(m, n)
    return offsets[-1] - m.alg.field.rank(system)


def _combine(homs: Sequence[Morphism], coeffs: Sequence[int]) -> Morphism:
    p = homs[0].source.alg.field.p
    maps = []
    for i in range(len(homs[0].maps)):
        acc = np.zeros_like(homs[0].maps[i])
        for h, c in zip(homs, coeffs):
            if c:
                acc = (acc + int(c) * h.maps[i]) % p
        maps.append(acc)
    return Morphism(homs[0].source, homs[0].target, maps)


def is_isomorphic(m: Representation, n: Representation, seed: int = 0) -> bool:
    """Decide M = N.

    Seeded random combinations of a Hom basis are tried first; when none is
    invertible, small Hom spaces are scanned exhaustively and otherwise the
    Krull-Schmidt decompositions are compared, which is deterministic.
    """
    m.same_algebra(n)
    if m.dims != n.dims:
        return False
    if m.total_dim == 0:
        return True
    homs = hom_basis(m, n)
    if not homs:
        return False
    if len(homs) != hom_dim(m, m) or len(homs) != hom_dim(n, n):
        return False
    f = m.alg.field
    rng = np.random.default_rng(seed)
    for _ in range(RETRY_BUDGET):
        if _combine(homs, f.random(rng, len(homs))).is_iso():
            return True
    if f.p ** len(homs) <= EXHAUSTIVE_LIMIT:
        return any(_combine(homs, c).is_iso() for c in product(range(f.p), repeat=len(homs)))
    return _same_decomposition(decompose(m, seed), decompose(n, seed))


def _indecomposables_isomorphic(m: Representation, n: Representation) -> bool:
    """For M, N indecomposable: M = N iff some g o f is a unit of End(M)."""
    if m.dims != n.dims:
        return False
    fwd, back = hom_basis(m, n), hom_basis(n, m)
    return any(g.compose(h).is_iso() for h in fwd for g in back)


# -- decomposition --------------------------------------------------------


def _charpoly(mat: np.ndarray, p: int) -> list[int]:
    n = mat.shape[0]
    if n == 0:
        return [1]
    dom = GF(p)
    dm = DomainMatrix([[dom(int(x)) for x in row] for row in mat], (n, n), dom)
    return [int(c) % p for c in dm.charpoly()]


def _poly_eval(coeffs: Sequence[int], mat: np.ndarray, p: int) -> np.ndarray:
    """Horner evaluation of a polynomial (highest degree first) at a matrix."""
    n = mat.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in coeffs:
        out = (out @ mat + int(c) * np.eye(n, dtype=np.int64)) % p if n else out
    return out


def _primary_factors(phi: Morphism) -> list[list[int]]:
    """Distinct irreducible factors of the characteristic polynomial of phi."""
    p = phi.source.alg.field.p
    found: dict[tuple[int, ...], list[int]] = {}
    for mat in phi.maps:
        if mat.shape[0] == 0:
            continue
        _, facs = gf_factor(_charpoly(mat, p), p, ZZ)
        for g, _mult in facs:
            found.setdefault(tuple(int(c) for c in g), [int(c) for c in g])
    return [found[k] for k in sorted(found)]


def _generalized_kernels(phi: Morphism, factors: list[list[int]]) -> list[list[np.ndarray]]:
    f = phi.source.alg.field
    out = []
    for g in factors:
        bases = []
        for mat in phi.maps:
            d = mat.shape[0]
            if d == 0:
                bases.append(np.zeros((0, 0), dtype=np.int64))
                continue
            gm = _poly_eval(g, mat, f.p)
            power = np.eye(d, dtype=np.int64)
            for _ in range(d):
                power = f.matmul(power, gm)
            bases.append(f.nullspace(power))
        out.append(bases)
    return out


def _is_local_split(m: Representation, endo: list[Morphism]) -> bool:
    """Certify End(M) = k + (nilpotent ideal); this implies M indecomposable."""
    f = m.alg.field
    total = m.total_dim
    shifted = []
    for b in endo:
        facs = _primary_factors(b)
        if len(facs) != 1 or len(facs[0]) != 2:
            return False
        lam = (-facs[0][1] * f.inv(facs[0][0])) % f.p
        shifted.append(_combine([b, identity(m)], [1, (-lam) % f.p]))
    span = np.array([s.flat() for s in shifted]).T
    rank = f.rank(span)
    if rank >= len(endo):
        return False
    layer = span
    for _ in range(total + 1):
        prods = []
        for a in shifted:
            for j in range(layer.shape[1]):
                col = layer[:, j]
                prods.append(_flat_compose(a, col, m))
        if not prods:
            return True
        nxt = np.array(prods).T
        if not nxt.any():
            return True
        if f.rank(np.concatenate([span, nxt], axis=1)) != rank:
            return False
        layer = f.col_space(nxt)
    return False


def _flat_compose(a: Morphism, flat: np.ndarray, m: Representation) -> np.ndarray:
    f = m.alg.field
    parts, off = [], 0
    for i, d in enumerate(m.dims):
        blk = flat[off : off + d * d].reshape(d, d)
        off += d * d
        parts.append(f.matmul(a.maps[i], blk).ravel())
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def indecomposable_summands(m: Representation, seed: int = 0) -> list[Representation]:
    """Split M into indecomposable submodules (Fitting decomposition).

    Raises:
        DecompositionFailure: no splitting endomorphism was found within the
            retry budget although End(M) could not be certified local.
    """
    if m.total_dim == 0:
        return []
    endo = hom_basis(m, m)
    if len(endo) == 1:
        return [m]
    candidates = list(endo)
    rng = np.random.default_rng(seed)
    f = m.alg.field
    for attempt in range(len(endo) + RETRY_BUDGET):
        if attempt == len(endo):
            if _is_local_split(m, endo):
                return [m]
        phi = candidates[attempt] if attempt < len(endo) else _combine(endo, f.random(rng, len(endo)))
        factors = _primary_factors(phi)
        if len(factors) < 2:
            continue
        parts = []
        for bases in _generalized_kernels(phi, factors):
            sub, _ = m.submodule(bases)
            parts.extend(indecomposable_summands(sub, seed))
        return parts
    raise DecompositionFailure(f"could not split module with dims {m.dims}")


@dataclass
class Decomposition:
    summands: list[tuple[Representation, int]]

    @property
    def count(self) -> int:
        """Number of pairwise non-isomorphic indecomposable summands."""
        return len(self.summands)

    def basic(self) -> list[Representation]:
        return [s for s, _ in self.summands]


def group_isomorphic(parts: Sequence[Representation]) -> list[tuple[Representation, int]]:
    groups: list[list] = []
    for part in parts:
        for g in groups:
            if _indecomposables_isomorphic(g[0], part):
                g[1] += 1
                break
        else:
            groups.append([part, 1])
    return [(g[0], g[1]) for g in groups]


def decompose(m: Representation, seed: int = 0) -> Decomposition:
    return Decomposition(group_isomorphic(indecomposable_summands(m, seed)))


def _same_decomposition(a: Decomposition, b: Decomposition) -> bool:
    if sorted(k for _, k in a.summands) != sorted(k for _, k in b.summands):
        return False
    unused = list(b.summands)
    for s, k in a.summands:
        for idx, (t, l) in enumerate(unused):
            if k == l and _indecomposables_isomorphic(s, t):
                del unused[idx]
                break
        else:
            return False
    return True


def is_basic(m: Representation, seed: int = 0) -> bool:
    return all(k == 1 for _, k in decompose(m, seed).summands)


# -- presentations, tau, Ext ----------------------------------------------


def top_generators(m: Representation) -> list[tuple[int, np.ndarray]]:
    """Vectors spanning a complement of rad M, as ``(vertex, vector)`` pairs."""
    f = m.alg.field
    out = []
    for i, span in enumerate(m.radical_spans()):
        rad = f.col_space(span) if span.size else np.zeros((m.dims[i], 0), dtype=np.int64)
        comp = f.complement(rad, m.dims[i])
        out.extend((i + 1, comp[:, j]) for j in range(comp.shape[1]))
    return out


def projective_cover(m: Representation) -> tuple[tuple[int, ...], Morphism]:
    """Projective cover ``sum P_v -> M`` sending each top generator to itself."""
    alg = m.alg
    f = alg.field
    gens = top_generators(m)
    verts = tuple(v for v, _ in gens)
    cover = projective_sum(alg, verts)
    maps = []
    for l in range(1, alg.n + 1):
        cols = []
        for v, g in gens:
            for u in alg.between[(v, l)]:
                cols.append(f.matmul(m.actions[u], g.reshape(-1, 1))[:, 0])
        maps.append(np.array(cols, dtype=np.int64).T.reshape(m.dims[l - 1], len(cols)))
    return verts, Morphism(cover, m, maps)


def syzygy(m: Representation) -> tuple[tuple[int, ...], Representation, Morphism]:
    """``(P0 vertices, Omega M, inclusion Omega M -> P0)``."""
    f = m.alg.field
    verts, pi = projective_cover(m)
    kernel, incl = pi.source.submodule([f.nullspace(mat) for mat in pi.maps])
    return verts, kernel, incl


def min_presentation(m: Representation) -> TwoTermComplex:
    """Minimal projective presentation ``P1 -> P0 -> M -> 0``."""
    alg = m.alg
    p0, kernel, incl = syzygy(m)
    gens = top_generators(kernel)
    p1 = tuple(v for v, _ in gens)
    diff = np.zeros((len(p0), len(p1), alg.dim), dtype=np.int64)
    for c, (v, g) in enumerate(gens):
        vec = alg.field.matmul(incl.maps[v - 1], g.reshape(-1, 1))[:, 0]
        off = 0
        for r, j in enumerate(p0):
            ks = alg.between[(j, v)]
            diff[r, c, ks] = vec[off : off + len(ks)]
            off += len(ks)
    return TwoTermComplex(alg, p1, p0, diff)


def tau(m: Representation) -> Representation:
    """Auslander-Reiten translate, ker(nu P1 -> nu P0) for the minimal presentation."""
    x = min_presentation(m)
    nu = nakayama_map(m.alg, x.p_minus1, x.p_zero, x.diff)
    f = m.alg.field
    sub, _ = nu.source.submodule([f.nullspace(mat) for mat in nu.maps])
    return sub


def ext1_dim(m: Representation, n: Representation) -> int:
    """dim coker(Hom(P0, N) -> Hom(Omega M, N))."""
    m.same_algebra(n)
    f = m.alg.field
    _, kernel, incl = syzygy(m)
    target = hom_dim(kernel, n)
    if target == 0:
        return 0
    restricted = [h.compose(incl).flat() for h in hom_basis(incl.target, n)]
    if not restricted:
        return target
    return target - f.rank(np.array(restricted).T)


def is_tau_rigid(m: Representation) -> bool:
    return hom_dim(m, tau(m)) == 0


def annihilator(m: Representation) -> np.ndarray:
    """Basis (columns, in algebra coordinates) of {a in A : M a = 0}."""
    alg = m.alg
    cols = []
    for k, b in enumerate(alg.basis):
        block = np.zeros((m.total_dim, m.total_dim), dtype=np.int64)
        so, to = sum(m.dims[: b.source - 1]), sum(m.dims[: b.target - 1])
        act = m.actions[k]
        block[to : to + act.shape[0], so : so + act.shape[1]] = act
        cols.append(block.ravel())
    mat = np.array(cols, dtype=np.int64).T.reshape(m.total_dim**2, alg.dim)
    return alg.field.nullspace(mat)


# -- torsion pair (Fac U, U^perp) -------------------------------------------


@dataclass
class CanonicalSequence:
    """0 -> tM -> M -> fM -> 0 for the torsion pair (Fac U, U^perp)."""

    torsion: Representation
    torsion_free: Representation
    inclusion: Morphism
    projection: Morphism


def trace_spans(u: Representation, m: Representation) -> list[np.ndarray]:
    homs = hom_basis(u, m)
    out = []
    for i in range(m.alg.n):
        blocks = [h.maps[i] for h in homs if h.maps[i].size]
        out.append(np.concatenate(blocks, axis=1) if blocks else np.zeros((m.dims[i], 0), dtype=np.int64))
    return out


def torsion_parts(u: Representation, m: Representation) -> CanonicalSequence:
    u.same_algebra(m)
    f = m.alg.field
    spans = trace_spans(u, m)
    bases = [f.col_space(s) if s.size else np.zeros((m.dims[i], 0), dtype=np.int64) for i, s in enumerate(spans)]
    t, incl = m.submodule(bases)
    quo, proj = m.quotient(bases)
    return CanonicalSequence(t, quo, incl, proj)


def in_fac(m: Representation, n: Representation) -> bool:
    """M in Fac N, i.e. the trace of N in M is all of M."""
    return torsion_parts(n, m).torsion.dims == m.dims


def sum_of(reps: Sequence[Representation], alg=None) -> Representation:
    alg = alg or reps[0].alg
    return direct_sum(alg, list(reps))
