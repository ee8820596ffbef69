"""Ideals and submodules: Gröbner bases, membership, quotients, Hilbert series."""

from __future__ import annotations

import math
from functools import cached_property
from itertools import combinations

from .engine import Budget, Engine, ReducerSet, TermOrder
from .hilbert import HilbertSeries
from .maps import GradedMap
from .ring import GradedRing, Polynomial, RingError

_budget: Budget | None = None


def set_budget(budget: Budget | None):
    """Install a process-wide Gröbner budget (None restores the default)."""
    global _budget
    _budget = budget


def current_budget() -> Budget | None:
    return _budget


# -- vector conversions ------------------------------------------------------

def col_to_vec(col) -> dict:
    vec = {}
    for c, f in enumerate(col):
        for e, v in f.terms.items():
            vec[(c, e)] = v
    return vec


def vec_to_col(ring: GradedRing, vec: dict, rank: int) -> list[Polynomial]:
    parts: list[dict] = [{} for _ in range(rank)]
    for (c, e), v in vec.items():
        parts[c][e] = v
    return [Polynomial(ring, t) for t in parts]


class SubmoduleBasis:
    """Reduced Gröbner basis of the submodule of ⊕R(-twists) spanned by columns."""

    def __init__(self, ring: GradedRing, twists, columns, position: str = "top", product_criterion: bool | None = None):
        self.ring = ring
        self.twists = tuple(twists)
        self.rank = len(self.twists)
        self.order = TermOrder(ring, self.twists, position=position)
        self.engine = Engine(self.order, _budget)
        packed = [self.order.pack(col_to_vec(c)) for c in columns]
        if product_criterion is None:
            product_criterion = self.rank == 1
        self.packed, self.kept = self.engine.groebner(packed, product_criterion=product_criterion)
        self._reducer = ReducerSet(self.engine, self.packed)

    @cached_property
    def basis(self) -> list[list[Polynomial]]:
        return [vec_to_col(self.ring, self.order.unpack(t), self.rank) for t in self.packed]

    def reduce(self, col) -> list[Polynomial]:
        t = self._reducer.reduce(self.order.pack(col_to_vec(col)))
        return vec_to_col(self.ring, self.order.unpack(t), self.rank)

    def contains(self, col) -> bool:
        return not self._reducer.reduce(self.order.pack(col_to_vec(col)))

    def lead_ideals(self) -> list[list[tuple]]:
        out: list[list[tuple]] = [[] for _ in range(self.rank)]
        for t in self.packed:
            c, e = self.order.decode(t[0][0])
            out[c].append(e)
        return out

    def quotient_hilbert_series(self) -> HilbertSeries:
        """Hilbert series of the cokernel F / N."""
        w = self.ring.weights
        hs = HilbertSeries.zero(w)
        for c, gens in enumerate(self.lead_ideals()):
            hs = hs + HilbertSeries.of_monomial_quotient(gens, w, self.twists[c])
        return hs


def minimal_generator_indices(ring, twists, columns) -> list[int]:
    """Indices of a minimal generating subset (graded Nakayama, degree by degree)."""
    return sorted(SubmoduleBasis(ring, twists, columns).kept)


class Lifter:
    """Express elements of span(columns) as combinations of the columns."""

    def __init__(self, ring: GradedRing, twists, columns, col_degrees):
        self.ring = ring
        self.m = len(twists)
        self.n = len(columns)
        tw = tuple(twists) + tuple(col_degrees)
        blocks = (1,) * self.m + (0,) * self.n
        self.order = TermOrder(ring, tw, blocks=blocks)
        self.engine = Engine(self.order, _budget)
        inputs = []
        for j, col in enumerate(columns):
            vec = col_to_vec(col)
            vec[(self.m + j, ring.one_mono)] = 1
            inputs.append(self.order.pack(vec))
        self.packed, _ = self.engine.groebner(inputs)
        self._reducer = ReducerSet(self.engine, self.packed)

    def syzygy_columns(self) -> list[list[Polynomial]]:
        out = []
        for t in self.packed:
            c, _ = self.order.decode(t[0][0])
            if c >= self.m:
                vec = {(cc - self.m, e): v for (cc, e), v in self.order.unpack(t).items()}
                out.append(vec_to_col(self.ring, vec, self.n))
        return out

    def lift(self, col):
        """Coefficients q with sum q_j * column_j == col, or None."""
        r = self._reducer.reduce(self.order.pack(col_to_vec(col)))
        if r and self.order.decode(r[0][0])[0] < self.m:
            return None
        F = self.ring.field
        vec = {(c - self.m, e): F.neg(v) for (c, e), v in self.order.unpack(r).items()}
        return vec_to_col(self.ring, vec, self.n)


def syzygy_gb(ring, twists, columns, col_degrees) -> list[list[Polynomial]]:
    """A Gröbner basis (hence generating set) of the syzygies of the columns."""
    if not columns:
        return []
    if not twists:
        return [[ring.one() if i == j else ring.zero() for i in range(len(columns))] for j in range(len(columns))]
    return Lifter(ring, twists, columns, col_degrees).syzygy_columns()


# -- ideals ------------------------------------------------------------------

class GradedIdeal:
    """Homogeneous ideal with cached Gröbner basis and invariants."""

    def __init__(self, ring: GradedRing, generators):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            ring.check(g)
            if not g.is_homogeneous():
                raise RingError(f"generator {g} is not homogeneous")
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    def __repr__(self):
        return f"GradedIdeal({', '.join(map(str, self.generators)) or '0'})"

    @property
    def degrees(self) -> list[int]:
        return [g.degree() for g in self.generators]

    @cached_property
    def _sb(self) -> SubmoduleBasis:
        return SubmoduleBasis(self.ring, (0,), [[g] for g in self.generators])

    def groebner_basis(self) -> list[Polynomial]:
        return [c[0] for c in self._sb.basis]

    def normal_form(self, f: Polynomial) -> Polynomial:
        self.ring.check(f)
        return self._sb.reduce([f])[0]

    def contains(self, f: Polynomial) -> bool:
        self.ring.check(f)
        return f.is_zero() or self._sb.contains([f])

    def contains_ideal(self, other: "GradedIdeal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def same_as(self, other: "GradedIdeal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.groebner_basis())

    @cached_property
    def minimal_generators(self) -> tuple[Polynomial, ...]:
        kept = self._sb.kept
        return tuple(self.generators[i] for i in sorted(kept))

    def minimalized(self) -> "GradedIdeal":
        return GradedIdeal(self.ring, self.minimal_generators)

    @cached_property
    def hilbert_series(self) -> HilbertSeries:
        """Hilbert series of R / self."""
        return self._sb.quotient_hilbert_series()

    def dimension(self) -> int:
        return self.hilbert_series.dimension()

    def height(self):
        d = self.dimension()
        return math.inf if d < 0 else self.ring.nvars - d

    def __add__(self, other: "GradedIdeal") -> "GradedIdeal":
        return GradedIdeal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "GradedIdeal") -> "GradedIdeal":
        return GradedIdeal(self.ring, [f * g for f in self.generators for g in other.generators])

    def power(self, k: int) -> "GradedIdeal":
        return ideal_power(self, k)

    def intersect(self, other: "GradedIdeal") -> "GradedIdeal":
        return intersect(self, other)


def _ext_ring(ring: GradedRing) -> GradedRing:
    return GradedRing(ring.field, ("_t",) + ring.variables, (0,) + ring.weights, "elim:1", _internal=True)


def intersect(A: GradedIdeal, B: GradedIdeal) -> GradedIdeal:
    """A ∩ B by eliminating t from t*A + (1-t)*B."""
    ring = A.ring
    if A.is_zero() or B.is_zero():
        return GradedIdeal(ring, [])
    ext = _ext_ring(ring)

    def lift(f, tpow):
        return {(tpow,) + e: v for e, v in f.terms.items()}

    F = ring.field
    cols = []
    for f in A.generators:
        cols.append([Polynomial(ext, lift(f, 1))])
    for g in B.generators:
        t = lift(g, 0)
        for e, v in g.terms.items():
            t[(1,) + e] = F.neg(v)
        cols.append([Polynomial(ext, t)])
    sb = SubmoduleBasis(ext, (0,), cols, product_criterion=True)
    out = []
    for c in sb.basis:
        p = c[0]
        if all(e[0] == 0 for e in p.terms):
            out.append(Polynomial(ring, {e[1:]: v for e, v in p.terms.items()}))
    return GradedIdeal(ring, out).minimalized()


def ideal_quotient_poly(a: GradedIdeal, f: Polynomial) -> GradedIdeal:
    """a : f = (a ∩ (f)) / f."""
    ring = a.ring
    if f.is_zero() or a.contains(f):
        return GradedIdeal(ring, [ring.one()])
    if a.is_zero():
        return GradedIdeal(ring, [])
    inter = intersect(a, GradedIdeal(ring, [f]))
    return GradedIdeal(ring, [g.divide_exact(f) for g in inter.generators])


def ideal_quotient(a: GradedIdeal, I: GradedIdeal) -> GradedIdeal:
    """a : I, intersecting a : f over the generators f of I."""
    if a.ring != I.ring:
        raise RingError("ring mismatch")
    ring = a.ring
    result = GradedIdeal(ring, [ring.one()])
    for f in I.minimal_generators:
        q = ideal_quotient_poly(a, f)
        if q.is_unit():
            continue
        result = q if result.is_unit() else intersect(result, q)
    if result.is_unit():
        return GradedIdeal(ring, [ring.one()])
    return _canonical(result)


def _canonical(I: GradedIdeal) -> GradedIdeal:
    """Reduced Gröbner basis elements that are minimal generators, in a fixed order."""
    gb = I.groebner_basis()
    mins = GradedIdeal(I.ring, gb).minimal_generators
    return GradedIdeal(I.ring, mins)


def ideal_power(I: GradedIdeal, k: int) -> GradedIdeal:
    if k < 1:
        raise ValueError("power must be positive")
    gens = list(I.minimal_generators)
    prods = {}
    for combo in _multisets(len(gens), k):
        p = I.ring.one()
        for idx in combo:
            p = p * gens[idx]
        prods[combo] = p
    return GradedIdeal(I.ring, [prods[c] for c in sorted(prods)])


def _multisets(n: int, k: int):
    def rec(start, k):
        if k == 0:
            yield ()
            return
        for i in range(start, n):
            for rest in rec(i, k - 1):
                yield (i,) + rest

    return rec(0, k)


class QuotientDescriptor:
    """The graded module top / bottom; ``top is None`` means the ring itself."""

    def __init__(self, top: GradedIdeal | None, bottom: GradedIdeal | None):
        self.top = top
        self.bottom = bottom

    def hilbert_series(self, ring: GradedRing) -> HilbertSeries:
        w = ring.weights
        full = HilbertSeries({0: 1}, w)
        top = full if self.top is None else full - self.top.hilbert_series
        bot = HilbertSeries.zero(w) if self.bottom is None else full - self.bottom.hilbert_series
        return top - bot


def graded_piece_dim(M, delta: int) -> int:
    """Dimension of the degree-delta piece of a ring, an ideal or a quotient."""
    if delta < 0:
        return 0
    if isinstance(M, GradedRing):
        return M.dim_piece(delta)
    if isinstance(M, GradedIdeal):
        return M.ring.dim_piece(delta) - M.hilbert_series.coefficient(delta)
    if isinstance(M, QuotientDescriptor):
        ring = (M.top or M.bottom).ring
        return M.hilbert_series(ring).coefficient(delta)
    raise TypeError("unsupported module description")


def groebner_basis(I: GradedIdeal) -> list[Polynomial]:
    return I.groebner_basis()


def normal_form(f: Polynomial, I: GradedIdeal) -> Polynomial:
    return I.normal_form(f)


def dimension_and_height(I: GradedIdeal):
    """(dim R/I, height I); the unit ideal gives (-1, inf)."""
    return I.dimension(), I.height()


# -- determinantal ideals ----------------------------------------------------

def minors(psi: GradedMap, k: int) -> list[Polynomial]:
    """All k x k minors, by Laplace expansion with memoisation."""
    ring = psi.ring
    A = psi.entries
    if k == 0:
        return [ring.one()]
    if k > psi.nrows or k > psi.ncols:
        return []
    memo: dict = {}

    def det(rows, cols):
        if len(rows) == 1:
            return A[rows[0]][cols[0]]
        key = (rows, cols)
        r = memo.get(key)
        if r is not None:
            return r
        acc = ring.zero()
        r0, rest = rows[0], rows[1:]
        for p, c in enumerate(cols):
            a = A[r0][c]
            if a.is_zero():
                continue
            sub = det(rest, cols[:p] + cols[p + 1:])
            if sub.is_zero():
                continue
            term = a * sub
            acc = acc - term if p % 2 else acc + term
        memo[key] = acc
        return acc

    out = []
    for rows in combinations(range(psi.nrows), k):
        for cols in combinations(range(psi.ncols), k):
            d = det(rows, cols)
            if not d.is_zero():
                out.append(d)
    return out


def fitting_ideal(psi: GradedMap, i: int) -> GradedIdeal:
    """Fitt_i of coker(psi): the (n0 - i)-minors; R once i >= n0."""
    if i < 0:
        raise ValueError("Fitting index must be nonnegative")
    ring = psi.ring
    k = psi.nrows - i
    if k <= 0:
        return GradedIdeal(ring, [ring.one()])
    ms = minors(psi, k)
    uniq = list(dict.fromkeys(m.monic() for m in ms))
    return GradedIdeal(ring, uniq)
