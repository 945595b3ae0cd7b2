"""Bound quiver algebras kQ/I with an explicit path basis.

Path words are read left to right: ``x*y`` is ``x`` followed by ``y``.
With this convention right modules are covariant representations, an arrow
``a: i -> j`` acting as a linear map ``M_i -> M_j``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import NonAdmissible, NotFiniteDimensional, ParseError
from .exactfield import PrimeField

DEFAULT_NILPOTENCY_BOUND = 64


@dataclass(frozen=True)
class Arrow:
    label: str
    source: int
    target: int


@dataclass(frozen=True)
class Path:
    """A path in the quiver: a start vertex and a tuple of arrow indices."""

    source: int
    target: int
    arrows: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)


@dataclass(frozen=True)
class Relation:
    terms: tuple[tuple[int, tuple[str, ...]], ...]


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self) -> None:
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ParseError("arrow labels must be unique")
        for a in self.arrows:
            for v in (a.source, a.target):
                if not 1 <= v <= self.vertex_count:
                    raise ParseError(f"arrow {a.label}: vertex {v} out of range")

    @cached_property
    def index(self) -> dict[str, int]:
        return {a.label: k for k, a in enumerate(self.arrows)}

    def out_arrows(self, v: int) -> list[int]:
        return [k for k, a in enumerate(self.arrows) if a.source == v]

    def word_path(self, word: tuple[str, ...]) -> Path:
        try:
            idx = tuple(self.index[w] for w in word)
        except KeyError as exc:
            raise ParseError(f"unknown arrow {exc.args[0]!r}") from None
        for a, b in zip(idx, idx[1:]):
            if self.arrows[a].target != self.arrows[b].source:
                raise ParseError(f"word {'*'.join(word)} is not composable")
        first, last = self.arrows[idx[0]], self.arrows[idx[-1]]
        return Path(first.source, last.target, idx)

    def paths_of_length(self, length: int) -> list[Path]:
        out = [Path(v, v) for v in range(1, self.vertex_count + 1)]
        for _ in range(length):
            out = [
                Path(p.source, self.arrows[k].target, p.arrows + (k,))
                for p in out
                for k in self.out_arrows(p.target)
            ]
        return out


@dataclass(frozen=True)
class AlgebraSpec:
    quiver: Quiver
    relations: tuple[Relation, ...]
    p: int = 101


_TERM = re.compile(r"^(?:(\d+)\*)?([A-Za-z_][\w]*(?:\*[A-Za-z_][\w]*)*)$")


def _parse_relation(text: str) -> Relation:
    body = text.replace(" ", "")
    if not body:
        raise ParseError("empty relation")
    if body[0] not in "+-":
        body = "+" + body
    pieces = re.findall(r"([+-])([^+-]+)", body)
    if "".join(s + t for s, t in pieces) != body:
        raise ParseError(f"malformed relation {text!r}")
    terms = []
    for sign, chunk in pieces:
        m = _TERM.match(chunk)
        if m is None:
            raise ParseError(f"malformed relation term {chunk!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        terms.append((-coeff if sign == "-" else coeff, tuple(m.group(2).split("*"))))
    return Relation(tuple(terms))


def parse_spec(text: str, p: int | None = None) -> AlgebraSpec:
    """Parse the line-oriented algebra description.

    ``p`` overrides any ``field`` line in the text.
    """
    n = None
    prime = 101
    arrows: list[Arrow] = []
    relations: list[Relation] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        parts = rest.split()
        try:
            if head == "field":
                (prime,) = map(int, parts)
            elif head == "vertices":
                (n,) = map(int, parts)
                if n < 1:
                    raise ParseError("vertex count must be positive")
            elif head == "arrow":
                label, s, t = parts
                arrows.append(Arrow(label, int(s), int(t)))
            elif head == "relation":
                relations.append(_parse_relation(rest))
            else:
                raise ParseError(f"unknown declaration {head!r}")
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        except ValueError:
            raise ParseError(f"line {lineno}: cannot parse {line!r}") from None
    if n is None:
        raise ParseError("missing 'vertices' declaration")
    p = p if p is not None else prime
    try:
        PrimeField(p)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return AlgebraSpec(Quiver(n, tuple(arrows)), tuple(relations), p)


class BoundQuiverAlgebra:
    """A finite-dimensional quotient kQ/I with a basis of path classes.

    Attributes:
        basis: basis paths, sorted by (length, source, target, arrows); the
            trivial path at vertex ``i`` has index ``i - 1``.
        mult: structure constants, ``mult[u, v]`` is the coefficient vector
            of ``basis[u] * basis[v]``.
        nilpotency_degree: smallest ``L`` with all paths of length ``L`` in I.
    """

    def __init__(self, spec: AlgebraSpec, bound: int = DEFAULT_NILPOTENCY_BOUND, text: str | None = None):
        self.spec = spec
        self.text = text
        self.quiver = spec.quiver
        self.field = PrimeField(spec.p)
        self.n = spec.quiver.vertex_count
        self.relations = [self._relation_vector_terms(r) for r in spec.relations]
        self.nilpotency_degree = self._find_nilpotency(bound)
        self._build_basis()
        self._build_mult()

    # -- construction -------------------------------------------------------

    def _relation_vector_terms(self, rel: Relation) -> list[tuple[int, Path]]:
        terms = []
        for coeff, word in rel.terms:
            if len(word) < 2:
                raise NonAdmissible(f"relation term {'*'.join(word)} has length < 2")
            terms.append((coeff % self.field.p, self.quiver.word_path(word)))
        ends = {(t.source, t.target) for _, t in terms}
        if len(ends) != 1:
            raise ParseError("relation terms do not share source and target")
        return [(c, t) for c, t in terms if c]

    def _ideal_span(self, max_len: int) -> tuple[list[Path], np.ndarray]:
        """Paths of length <= max_len and the truncated ideal generators.

        Generators are ``p * r * q`` for relations r and paths p, q, with
        terms longer than ``max_len`` discarded.
        """
        paths = [p for length in range(max_len + 1) for p in self.quiver.paths_of_length(length)]
        col = {p: k for k, p in enumerate(paths)}
        rows = []
        by_len = {length: self.quiver.paths_of_length(length) for length in range(max_len + 1)}
        for terms in self.relations:
            if not terms:
                continue
            src, tgt = terms[0][1].source, terms[0][1].target
            shortest = min(len(t) for _, t in terms)
            for lp in range(max_len - shortest + 1):
                lefts = [p for p in by_len[lp] if p.target == src]
                for lq in range(max_len - shortest - lp + 1):
                    rights = [q for q in by_len[lq] if q.source == tgt]
                    for left, right in itertools.product(lefts, rights):
                        row = np.zeros(len(paths), dtype=np.int64)
                        for c, t in terms:
                            arrows = left.arrows + t.arrows + right.arrows
                            if len(arrows) <= max_len:
                                row[col[Path(left.source, right.target, arrows)]] += c
                        rows.append(row % self.field.p)
        gens = np.array(rows, dtype=np.int64).reshape(len(rows), len(paths))
        return paths, gens

    def _find_nilpotency(self, bound: int) -> int:
        for length in range(1, bound + 1):
            top = self.quiver.paths_of_length(length)
            if not top:
                return length
            paths, gens = self._ideal_span(length)
            rank = self.field.rank(gens)
            idx = [k for k, p in enumerate(paths) if len(p) == length]
            extra = np.zeros((len(idx), len(paths)), dtype=np.int64)
            extra[range(len(idx)), idx] = 1
            both = np.concatenate([gens, extra]) if gens.size else extra
            if self.field.rank(both) == rank:
                return length
        raise NotFiniteDimensional(f"no length L <= {bound} with all length-L paths in the ideal")

    def _build_basis(self) -> None:
        top = self.nilpotency_degree - 1
        paths, gens = self._ideal_span(top)
        # longest paths first so they become pivots and shorter paths survive
        order = sorted(
            range(len(paths)),
            key=lambda k: (-len(paths[k]), paths[k].source, paths[k].target, paths[k].arrows),
        )
        reordered = gens[:, order] if gens.size else np.zeros((0, len(paths)), dtype=np.int64)
        r, pivots, rank = self.field.rref(reordered)
        pivot_set = set(pivots)
        standard = [order[c] for c in range(len(paths)) if c not in pivot_set]
        self.basis: list[Path] = sorted(
            (paths[k] for k in standard), key=lambda p: (len(p), p.source, p.target, p.arrows)
        )
        self.dim = len(self.basis)
        bidx = {p: k for k, p in enumerate(self.basis)}
        self.basis_index = bidx
        normal: dict[Path, np.ndarray] = {}
        for c, k in enumerate(order):
            vec = np.zeros(self.dim, dtype=np.int64)
            if c in pivot_set:
                row = r[pivots.index(c)]
                for c2, k2 in enumerate(order):
                    if c2 not in pivot_set and row[c2]:
                        vec[bidx[paths[k2]]] = (-row[c2]) % self.field.p
            else:
                vec[bidx[paths[k]]] = 1
            normal[paths[k]] = vec
        self._normal = normal

    def _build_mult(self) -> None:
        d = self.dim
        mult = np.zeros((d, d, d), dtype=np.int64)
        for u, pu in enumerate(self.basis):
            for v, pv in enumerate(self.basis):
                if pu.target != pv.source:
                    continue
                mult[u, v] = self.normal_form(Path(pu.source, pv.target, pu.arrows + pv.arrows))
        self.mult = mult

    # -- queries ------------------------------------------------------------

    def normal_form(self, path: Path) -> np.ndarray:
        if len(path) >= self.nilpotency_degree:
            return np.zeros(self.dim, dtype=np.int64)
        return self._normal[path].copy()

    def word(self, k: int) -> str:
        b = self.basis[k]
        if not b.arrows:
            return f"e{b.source}"
        return "*".join(self.quiver.arrows[a].label for a in b.arrows)

    def idempotent(self, i: int) -> int:
        """Basis index of the trivial path at vertex ``i``."""
        return i - 1

    @cached_property
    def between(self) -> dict[tuple[int, int], list[int]]:
        """Basis indices of paths from ``i`` to ``j`` (spanning e_i A e_j)."""
        out: dict[tuple[int, int], list[int]] = {
            (i, j): [] for i in range(1, self.n + 1) for j in range(1, self.n + 1)
        }
        for k, b in enumerate(self.basis):
            out[(b.source, b.target)].append(k)
        return out

    @cached_property
    def source_of(self) -> np.ndarray:
        return np.array([b.source for b in self.basis])

    @cached_property
    def target_of(self) -> np.ndarray:
        return np.array([b.target for b in self.basis])

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        f = self.field
        return f.matmul(a, f.einsum("v,uvw->uw", b, self.mult))

    def left_mult_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix of ``x -> a * x`` on coefficient vectors."""
        return self.field.einsum("u,uvw->wv", a, self.mult)

    def right_mult_matrix(self, b: np.ndarray) -> np.ndarray:
        """Matrix of ``x -> x * b`` on coefficient vectors."""
        return self.field.einsum("v,uvw->wu", b, self.mult)

    def cartan_matrix(self) -> np.ndarray:
        c = np.zeros((self.n, self.n), dtype=np.int64)
        for (i, j), ks in self.between.items():
            c[i - 1, j - 1] = len(ks)
        return c

    def check_associative(self) -> bool:
        f = self.field
        left = f.einsum("uvx,xwy->uvwy", self.mult, self.mult)
        right = f.einsum("vwx,uxy->uvwy", self.mult, self.mult)
        return bool(np.array_equal(left, right))

    def element(self, terms: dict[int, int]) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=np.int64)
        for k, c in terms.items():
            vec[k] = c % self.field.p
        return vec

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra(n={self.n}, dim={self.dim}, p={self.field.p})"


def build_algebra(text: str, p: int | None = None, bound: int = DEFAULT_NILPOTENCY_BOUND) -> BoundQuiverAlgebra:
    """Build kQ/I from the textual description; see :func:`parse_spec`."""
    alg = BoundQuiverAlgebra(parse_spec(text, p), bound=bound, text=text)
    if alg.dim <= 64 and not alg.check_associative():
        from .errors import InvariantViolation

        raise InvariantViolation("multiplication table is not associative")
    return alg
