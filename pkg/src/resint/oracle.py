"""Degree-by-degree linear-algebra oracles, independent of the Gröbner engine.

Everything here works inside a single graded piece R_δ, spanned by
monomials, so results are exact but limited to a bounded degree window.
"""

from __future__ import annotations

import flint
import numpy as np

from .linalg import Subspace, dense_ok, left_kernel, left_kernel_mod_p, left_kernel_rational
from .ring import GradedRing, Polynomial


class _Coords:
    def __init__(self, ring: GradedRing, delta: int):
        self.monos = ring.monomials_of_degree(delta)
        self.index = {m: i for i, m in enumerate(self.monos)}

    def vec(self, f: Polynomial) -> dict:
        return {self.index[e]: c for e, c in f.terms.items()}


def _multiples(ring, gens, delta, co):
    out = []
    for g in gens:
        if g.is_zero() or g.degree() > delta:
            continue
        for m in ring.monomials_of_degree(delta - g.degree()):
            out.append(co.vec(g.mul_monomial(m)))
    return out


def ideal_piece(ring: GradedRing, gens, delta: int) -> tuple[_Coords, Subspace]:
    """I_δ as the span of all monomial multiples of the generators."""
    co = _Coords(ring, delta)
    return co, Subspace(ring.field, len(co.monos), _multiples(ring, gens, delta, co))


def piece_dim(ring: GradedRing, gens, delta: int) -> int:
    return ideal_piece(ring, gens, delta)[1].dim


def hilbert_function(ring: GradedRing, gens, delta: int) -> int:
    """dim (R/I)_δ."""
    return ring.dim_piece(delta) - piece_dim(ring, gens, delta)


def member(f: Polynomial, gens) -> bool:
    """Membership of a homogeneous f in the ideal generated by gens."""
    if f.is_zero():
        return True
    co, S = ideal_piece(f.ring, gens, f.degree())
    return S.contains(co.vec(f))


def quotient_piece(ring: GradedRing, a_gens, I_gens, delta: int) -> list[Polynomial]:
    """Basis of (a : I)_δ = {c in R_δ : c·f ∈ a for every generator f of I}."""
    monos = ring.monomials_of_degree(delta)
    rational = ring.field.p == 0
    p = ring.field.p if dense_ok(ring.field) else 0
    pieces: dict = {}
    blocks = []
    sparse_images: list[dict] = [dict() for _ in monos]
    offset = 0
    for f in I_gens:
        if f.is_zero():
            continue
        d = delta + f.degree()
        if d not in pieces:
            pieces[d] = ideal_piece(ring, a_gens, d)
        co, S = pieces[d]
        if rational:
            blocks.append(S.reduce_rational([co.vec(f.mul_monomial(m)) for m in monos]))
        elif p:
            X = np.zeros((len(monos), len(co.monos)), dtype=np.int64)
            for k, m in enumerate(monos):
                for col, x in co.vec(f.mul_monomial(m)).items():
                    X[k, col] = x
            blocks.append(S.reduce_dense(X))
        else:
            for k, m in enumerate(monos):
                r = S.reduce_sparse(co.vec(f.mul_monomial(m)))
                for col, x in r.items():
                    sparse_images[k][offset + col] = x
            offset += len(co.monos)
    if rational:
        if not blocks:
            vecs = [{k: 1} for k in range(len(monos))]
        else:
            Y = blocks[0]
            for B in blocks[1:]:
                Y = _hstack_rational(Y, B)
            vecs = left_kernel_rational(Y)
    elif p:
        if blocks:
            K = left_kernel_mod_p(np.hstack(blocks), p)
        else:
            K = np.eye(len(monos), dtype=np.int64)
        vecs = [{k: int(x) for k, x in enumerate(row) if x} for row in K]
    else:
        vecs = left_kernel(sparse_images, ring.field)
    return [Polynomial(ring, {monos[k]: c for k, c in v.items() if c}) for v in vecs]


def _hstack_rational(A, B):
    rows = []
    for i in range(A.nrows()):
        rows.extend(A[i, j] for j in range(A.ncols()))
        rows.extend(B[i, j] for j in range(B.ncols()))
    return flint.fmpq_mat(A.nrows(), A.ncols() + B.ncols(), rows)


def same_piece(ring: GradedRing, gens_a, gens_b, delta: int) -> bool:
    """Do two generating sets span the same degree-δ piece?"""
    _, A = ideal_piece(ring, gens_a, delta)
    _, B = ideal_piece(ring, gens_b, delta)
    return A.dim == B.dim and all(B.contains(v) for v in A.basis())


def quotient_agrees(ring: GradedRing, a_gens, I_gens, J_gens, max_degree: int = 6) -> list[dict]:
    """Compare J with the oracle quotient in degrees 0..max_degree."""
    rows = []
    for d in range(max_degree + 1):
        co = _Coords(ring, d)
        O = Subspace(ring.field, len(co.monos), [co.vec(b) for b in quotient_piece(ring, a_gens, I_gens, d)])
        _, Jd = ideal_piece(ring, J_gens, d)
        ok = O.dim == Jd.dim and all(O.contains(v) for v in Jd.basis())
        rows.append({"degree": d, "oracle_dim": O.dim, "quotient_dim": Jd.dim, "match": ok})
    return rows
