"""Sparse exact linear algebra over Q or F_p (vectors are dicts col -> value)."""

from __future__ import annotations

import heapq
from fractions import Fraction

import flint
import numpy as np

from .ring import Field


class EchelonBasis:
    """Incrementally maintained row echelon basis.

    Each stored row has pivot entry 1 at its smallest column, so one
    ascending sweep over the columns of a vector reduces it completely.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, dict] = {}  # pivot column -> row

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        F = self.field
        P = F.p
        rows = self.rows
        v = {k: x for k, x in v.items() if x}
        heap = [k for k in v if k in rows]
        heapq.heapify(heap)
        while heap:
            col = heapq.heappop(heap)
            c = v.get(col)
            if not c:
                continue
            for k, x in rows[col].items():
                old = v.get(k)
                if P:
                    y = ((old or 0) - c * x) % P
                else:
                    y = F.add(old or 0, F.neg(F.mul(c, x)))
                if y:
                    v[k] = y
                    if old is None and k in rows:
                        heapq.heappush(heap, k)
                else:
                    v.pop(k, None)
        return v

    def add(self, v: dict) -> bool:
        """Insert v; return True if it was independent."""
        F = self.field
        v = self.reduce(v)
        if not v:
            return False
        piv = min(v)
        inv = F.inv(v[piv])
        self.rows[piv] = {k: F.mul(x, inv) for k, x in v.items()}
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)


def rank(vectors, field: Field) -> int:
    E = EchelonBasis(field)
    for v in vectors:
        E.add(v)
    return len(E)


def left_kernel(images, field: Field) -> list[dict]:
    """Basis of {c : sum_k c_k images[k] = 0}, as dicts k -> c_k."""
    n = len(images)
    big = 1 << 40  # tag columns for the identity block
    E = EchelonBasis(field)
    kernel = []
    for k, img in enumerate(images):
        v = dict(img)
        v[big + k] = 1
        v = E.reduce(v)
        if v and min(v) >= big:
            kernel.append(v)
        if v:
            E.add(v)
    # rows whose pivot lies in the identity block span the kernel
    out = []
    for piv, row in sorted(E.rows.items()):
        if piv >= big:
            out.append({k - big: x for k, x in row.items()})
    assert len(out) == len(kernel) or n == 0
    return out


# -- dense elimination over F_p ----------------------------------------------

def rref_mod_p(A, p: int):
    """Reduced row echelon form of an integer matrix modulo p; returns (R, pivot columns)."""
    A = np.array(A, dtype=np.int64) % p
    m, n = A.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(A[row:, col])[0]
        if nz.size == 0:
            continue
        k = row + nz[0]
        if k != row:
            A[[row, k]] = A[[k, row]]
        A[row] = A[row] * pow(int(A[row, col]), -1, p) % p
        factors = A[:, col].copy()
        factors[row] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            A[hit] = (A[hit] - np.outer(factors[hit], A[row])) % p
        pivots.append(col)
        row += 1
    return A[:row], pivots


DENSE_PRIME_LIMIT = 1 << 20  # keeps dense int64 products far from overflow


def dense_ok(field: Field) -> bool:
    return 0 < field.p < DENSE_PRIME_LIMIT


def _fmpq_rows(rows, n: int) -> "flint.fmpq_mat":
    """Dense rational matrix from sparse rows (dict col -> int or Fraction)."""
    flat = [0] * (len(rows) * n)
    for i, v in enumerate(rows):
        base = i * n
        for k, x in v.items():
            flat[base + k] = flint.fmpq(x.numerator, x.denominator) if hasattr(x, "denominator") else x
    return flint.fmpq_mat(len(rows), n, flat)


def _fmpq_value(x):
    num, den = int(x.p), int(x.q)
    return num if den == 1 else Fraction(num, den)


class Subspace:
    """Span of sparse vectors in K^n.

    Backends: FLINT over Q, numpy over small F_p, sparse echelon otherwise.
    """

    def __init__(self, field: Field, n: int, vectors=()):
        self.field = field
        self.n = n
        self._E = None
        self._Q = None
        if field.p == 0:
            rank = 0
            if vectors:
                R, rank = _fmpq_rows(vectors, n).rref()
            self._piv = []
            rows = []
            for i in range(rank):
                row = [R[i, j] for j in range(n)]
                self._piv.append(next(j for j, x in enumerate(row) if x != 0))
                rows.extend(row)
            self._Q = flint.fmpq_mat(rank, n, rows) if rank else None
        elif dense_ok(field):
            M = np.zeros((len(vectors), n), dtype=np.int64)
            for i, v in enumerate(vectors):
                for k, x in v.items():
                    M[i, k] = x
            self._R, self._piv = rref_mod_p(M, field.p) if len(vectors) else (np.zeros((0, n), dtype=np.int64), [])
        else:
            self._E = EchelonBasis(field)
            for v in vectors:
                self._E.add(v)

    @property
    def dim(self) -> int:
        return len(self._E) if self._E is not None else len(self._piv)

    def reduce_dense(self, V):
        """Rows of V reduced modulo the subspace (F_p backend)."""
        p = self.field.p
        V = np.array(V, dtype=np.int64) % p
        if self._piv:
            V = (V - V[:, self._piv] @ self._R % p) % p
        return V

    def reduce_rational(self, rows):
        """Sparse rows reduced modulo the subspace, as an fmpq_mat (Q backend)."""
        V = _fmpq_rows(rows, self.n)
        if self._Q is None:
            return V
        P = flint.fmpq_mat(V.nrows(), len(self._piv), [V[i, j] for i in range(V.nrows()) for j in self._piv])
        return V - P * self._Q

    def reduce_sparse(self, v: dict) -> dict:
        return self._E.reduce(v)

    def contains(self, v: dict) -> bool:
        if self._E is not None:
            return self._E.contains(v)
        if self.field.p == 0:
            return all(x == 0 for x in self.reduce_rational([v]).entries())
        row = np.zeros((1, self.n), dtype=np.int64)
        for k, x in v.items():
            row[0, k] = x
        return not self.reduce_dense(row).any()

    def basis(self) -> list[dict]:
        if self._E is not None:
            return [dict(r) for _, r in sorted(self._E.rows.items())]
        if self.field.p == 0:
            if self._Q is None:
                return []
            return [
                {j: _fmpq_value(self._Q[i, j]) for j in range(self.n) if self._Q[i, j] != 0}
                for i in range(self._Q.nrows())
            ]
        return [{int(k): int(x) for k, x in zip(np.nonzero(r)[0], r[np.nonzero(r)[0]])} for r in self._R]


def left_kernel_rational(Y) -> list[dict]:
    """Basis of {c : c Y = 0} for an fmpq_mat Y, as sparse integer vectors."""
    m = Y.nrows()
    if Y.ncols() == 0:
        return [{i: 1} for i in range(m)]
    Z, _ = Y.transpose().numer_denom()
    N, nullity = Z.nullspace()
    return [{i: int(N[i, t]) for i in range(m) if N[i, t] != 0} for t in range(nullity)]


def left_kernel_mod_p(Y, p: int):
    """Basis of {c : c Y = 0} for a dense matrix Y over F_p, as a dense array."""
    Y = np.array(Y, dtype=np.int64) % p
    n = Y.shape[0]
    R, piv = rref_mod_p(Y.T, p)
    free = [j for j in range(n) if j not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for r, pc in enumerate(piv):
            out[t, pc] = -R[r, f] % p
    return out
