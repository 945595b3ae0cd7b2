"""Dense linear algebra over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays whose entries are reduced mod p.
All routines return fresh arrays and never modify their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_INT64_SAFE = 2**63 - 1


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field of integers modulo a prime ``p`` (2 <= p < 2**31)."""

    p: int = 101

    def __post_init__(self) -> None:
        if not (2 <= self.p < 2**31) or not _is_prime(self.p):
            raise ValueError(f"field modulus must be a prime below 2**31, got {self.p}")

    # -- construction -------------------------------------------------------

    def array(self, data, shape: tuple[int, ...] | None = None) -> np.ndarray:
        a = np.asarray(data, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        return np.mod(a, self.p)

    def zeros(self, *shape: int) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def random(self, rng: np.random.Generator, *shape: int) -> np.ndarray:
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    # -- arithmetic ---------------------------------------------------------

    def inv(self, x: int) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return pow(x, -1, self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product ``a @ b`` reduced mod p without int64 overflow."""
        k = a.shape[-1]
        if k == 0:
            return np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
        if (self.p - 1) ** 2 * k <= _INT64_SAFE:
            return np.mod(a @ b, self.p)
        out = (a.astype(object) @ b.astype(object)) % self.p
        return out.astype(np.int64)

    def einsum(self, subscripts: str, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Two-operand ``np.einsum`` reduced mod p without int64 overflow."""
        if (self.p - 1) ** 2 * max(1, min(a.size, b.size)) <= _INT64_SAFE:
            return np.mod(np.einsum(subscripts, a, b), self.p)
        out = np.einsum(subscripts, a.astype(object), b.astype(object)) % self.p
        return out.astype(np.int64)

    # -- elimination --------------------------------------------------------

    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int], int]:
        """Reduced row echelon form.

        Pivoting takes the first nonzero entry in scan order, so the result
        is deterministic.

        Returns:
            ``(R, pivots, rank)`` where ``pivots`` lists pivot columns.
        """
        p = self.p
        r = np.mod(np.array(m, dtype=np.int64, copy=True), p)
        if r.ndim != 2:
            raise ValueError("rref expects a 2-d matrix")
        rows, cols = r.shape
        pivots: list[int] = []
        row = 0
        for col in range(cols):
            if row >= rows:
                break
            nz = np.nonzero(r[row:, col])[0]
            if nz.size == 0:
                continue
            piv = row + int(nz[0])
            if piv != row:
                r[[row, piv]] = r[[piv, row]]
            r[row] = (r[row] * self.inv(r[row, col])) % p
            factors = r[:, col].copy()
            factors[row] = 0
            nzr = np.nonzero(factors)[0]
            if nzr.size:
                r[nzr] = np.mod(r[nzr] - np.outer(factors[nzr], r[row]) % p, p)
            pivots.append(col)
            row += 1
        return r, pivots, len(pivots)

    def rank(self, m: np.ndarray) -> int:
        if m.size == 0:
            return 0
        return self.rref(m)[2]

    def nullspace(self, m: np.ndarray) -> np.ndarray:
        """Basis of the right kernel, one vector per column.

        Each basis vector has a 1 in one free column and zeros in the other
        free columns, so the basis is canonical for the given matrix.
        """
        m = np.asarray(m, dtype=np.int64)
        cols = m.shape[1]
        if m.shape[0] == 0:
            return np.eye(cols, dtype=np.int64)
        r, pivots, rank = self.rref(m)
        free = [c for c in range(cols) if c not in set(pivots)]
        basis = np.zeros((cols, len(free)), dtype=np.int64)
        if free:
            basis[free, range(len(free))] = 1
            if pivots:
                basis[np.ix_(pivots, range(len(free)))] = np.mod(-r[:rank][:, free], self.p)
        return basis

    def solve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        """Some ``x`` with ``a @ x == b`` (free variables set to 0), or ``None``.

        ``b`` may be a vector or a matrix of right-hand sides; in the matrix
        case ``None`` is returned if any column is inconsistent.
        """
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        vec = b.ndim == 1
        bb = b.reshape(-1, 1) if vec else b
        rows, cols = a.shape
        if bb.shape[0] != rows:
            raise ValueError("solve: row count mismatch")
        aug = np.concatenate([a.reshape(rows, cols), bb], axis=1)
        r, pivots, _ = self.rref(aug)
        if pivots and pivots[-1] >= cols:
            return None
        x = np.zeros((cols, bb.shape[1]), dtype=np.int64)
        for i, pc in enumerate(pivots):
            x[pc] = r[i, cols:]
        return x[:, 0] if vec else x

    def col_space(self, m: np.ndarray) -> np.ndarray:
        """Basis of the column span, in canonical (RREF-transposed) form."""
        m = np.asarray(m, dtype=np.int64)
        if m.size == 0:
            return np.zeros((m.shape[0], 0), dtype=np.int64)
        r, _, rank = self.rref(m.T)
        return r[:rank].T.copy()

    def is_invertible(self, m: np.ndarray) -> bool:
        return m.shape[0] == m.shape[1] and self.rank(m) == m.shape[0]

    def inverse(self, m: np.ndarray) -> np.ndarray:
        n = m.shape[0]
        x = self.solve(m, np.eye(n, dtype=np.int64))
        if x is None or not self.is_invertible(m):
            raise ZeroDivisionError("matrix is singular over F_p")
        return x

    def complement(self, sub: np.ndarray, dim: int) -> np.ndarray:
        """Standard basis vectors completing the column span of ``sub``.

        These are the non-pivot coordinates of the row-reduced span, so the
        choice is reproducible.
        """
        if sub.size == 0:
            return np.eye(dim, dtype=np.int64)
        _, pivots, _ = self.rref(np.asarray(sub).T)
        free = [i for i in range(dim) if i not in set(pivots)]
        out = np.zeros((dim, len(free)), dtype=np.int64)
        for j, i in enumerate(free):
            out[i, j] = 1
        return out
