"""Homogeneous Buchberger engine for submodules of graded free modules.

Terms are packed into one integer key whose numeric order is the term order
and which is additive under multiplication by monomials, so shifting a
vector by a monomial is a single integer addition per term.  A vector is a
list of ``(key, coeff)`` pairs sorted by decreasing key.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .ring import GradedRing

_B = 24  # bits per field
_MASK = (1 << _B) - 1
_OFF = 1 << (_B - 2)


class BudgetExceeded(RuntimeError):
    """A Gröbner computation exceeded its degree or step budget."""

    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} budget exceeded (limit {limit})")
        self.what = what
        self.limit = limit


@dataclass
class Budget:
    max_degree: int = 200
    max_steps: int = 2_000_000


DEFAULT_BUDGET = Budget()


def _int_inverse(rows):
    """Pick n independent rows; return (indices, integer adjugate, det)."""
    n = len(rows[0])
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    for idx, r in enumerate(rows):
        v = [Fraction(x) for x in r]
        for b in basis:
            p = next(i for i, x in enumerate(b) if x)
            if v[p]:
                f = v[p] / b[p]
                v = [a - f * c for a, c in zip(v, b)]
        if any(v):
            basis.append(v)
            chosen.append(idx)
        if len(chosen) == n:
            break
    M = [[Fraction(x) for x in rows[i]] for i in chosen]
    # Gauss-Jordan inverse
    A = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c])
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    inv = [row[n:] for row in A]
    den = 1
    for row in inv:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    return chosen, [[int(x * den) for x in row] for row in inv], den


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class TermOrder:
    """Packed term order on a free module with given twists.

    ``top`` compares (block, degree, monomial, position); ``pot`` compares
    (block, position, degree, monomial).  Larger block values are larger.
    Smaller component indices are larger within a tie.
    """

    def __init__(self, ring: GradedRing, twists, blocks=None, position: str = "top"):
        self.ring = ring
        self.n = ring.nvars
        self.twists = tuple(int(t) for t in twists)
        self.rank = len(self.twists)
        self.blocks = tuple(blocks) if blocks is not None else (0,) * self.rank
        self.rows = ring.order_rows
        F = len(self.rows)
        self.position = position
        if position == "top":
            self.pos_shift = 0
            self.mono_shift = _B
            self.deg_shift = _B * (F + 1)
            self.block_shift = _B * (F + 2)
        elif position == "pot":
            self.mono_shift = 0
            self.deg_shift = _B * F
            self.pos_shift = _B * (F + 1)
            self.block_shift = _B * (F + 2)
        else:
            raise ValueError(position)
        self._field_shifts = [self.mono_shift + _B * (F - 1 - f) for f in range(F)]
        # per-variable increments of the key
        w = ring.weights
        self.var_inc = []
        for i in range(self.n):
            inc = w[i] << self.deg_shift
            for f, row in enumerate(self.rows):
                inc += row[i] << self._field_shifts[f]
            self.var_inc.append(inc)
        self._comp_base = []
        for c in range(self.rank):
            base = (self.blocks[c] << self.block_shift) + ((self.rank - 1 - c) << self.pos_shift)
            base += (self.twists[c] + _OFF) << self.deg_shift
            self._comp_base.append(base)
        self._chosen, self._adj, self._det = _int_inverse(self.rows)
        self._decode_cache: dict[int, tuple] = {}

    def shift(self, e) -> int:
        return sum(a * inc for a, inc in zip(e, self.var_inc) if a)

    def key(self, comp: int, e) -> int:
        return self._comp_base[comp] + self.shift(e)

    def degree_of_key(self, key: int) -> int:
        return ((key >> self.deg_shift) & _MASK) - _OFF

    def decode(self, key: int) -> tuple[int, tuple[int, ...]]:
        """(component, exponent tuple) of a term key."""
        r = self._decode_cache.get(key)
        if r is not None:
            return r
        comp = self.rank - 1 - ((key >> self.pos_shift) & _MASK)
        vals = [(key >> self._field_shifts[f]) & _MASK for f in self._chosen]
        e = tuple(sum(a * v for a, v in zip(row, vals)) // self._det for row in self._adj)
        r = (comp, e)
        if len(self._decode_cache) > 500_000:
            self._decode_cache.clear()
        self._decode_cache[key] = r
        return r

    # conversions between user vectors {(comp, exps): coeff} and packed lists
    def pack(self, vec: dict) -> list:
        return sorted(((self.key(c, e), v) for (c, e), v in vec.items() if v), reverse=True)

    def unpack(self, terms) -> dict:
        return {self.decode(k): v for k, v in terms}


class _Elem:
    __slots__ = ("terms", "key", "comp", "exps", "deg", "idx")

    def __init__(self, terms, order: TermOrder, idx: int):
        self.terms = terms
        self.key = terms[0][0]
        self.comp, self.exps = order.decode(self.key)
        self.deg = order.degree_of_key(self.key)
        self.idx = idx


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class Engine:
    """Reduction and Buchberger's algorithm for one term order and field."""

    def __init__(self, order: TermOrder, budget: Budget | None = None):
        self.order = order
        self.P = order.ring.field.p
        self.field = order.ring.field
        self.budget = budget or DEFAULT_BUDGET
        self.steps = 0

    # -- arithmetic on packed vectors
    def monic(self, terms):
        c = terms[0][1]
        if c == 1:
            return terms
        inv = self.field.inv(c)
        P = self.P
        if P:
            return [(k, v * inv % P) for k, v in terms]
        return [(k, _norm(v * inv)) for k, v in terms]

    def sub_mul(self, p, start, c, shift, g):
        """p[start:] - c * x^shift * g, assuming the leading terms cancel."""
        out = []
        app = out.append
        i, lp = start + 1, len(p)
        j, lg = 1, len(g)
        P = self.P
        if P:
            while i < lp and j < lg:
                kp = p[i][0]
                kg = g[j][0] + shift
                if kp > kg:
                    app(p[i])
                    i += 1
                elif kp < kg:
                    app((kg, -c * g[j][1] % P))
                    j += 1
                else:
                    v = (p[i][1] - c * g[j][1]) % P
                    if v:
                        app((kp, v))
                    i += 1
                    j += 1
            if i < lp:
                out.extend(p[i:])
            while j < lg:
                app((g[j][0] + shift, -c * g[j][1] % P))
                j += 1
        else:
            while i < lp and j < lg:
                kp = p[i][0]
                kg = g[j][0] + shift
                if kp > kg:
                    app(p[i])
                    i += 1
                elif kp < kg:
                    app((kg, _norm(-c * g[j][1])))
                    j += 1
                else:
                    v = p[i][1] - c * g[j][1]
                    if v:
                        app((kp, _norm(v)))
                    i += 1
                    j += 1
            if i < lp:
                out.extend(p[i:])
            while j < lg:
                app((g[j][0] + shift, _norm(-c * g[j][1])))
                j += 1
        return out

    def find_reducer(self, key, reducers):
        comp, e = self.order.decode(key)
        for g in reducers.get(comp, ()):
            if _divides(g.exps, e):
                return g
        return None

    def normal_form(self, p, reducers, full: bool = True):
        if not p:
            return []
        # accumulate in a dict and visit keys through a max-heap, so one
        # reduction step costs only the length of the reducer
        P = self.P
        acc = dict(p)
        heap = [-k for k, _ in p]
        heapq.heapify(heap)
        rem = []
        steps = 0
        while heap:
            k = -heapq.heappop(heap)
            c = acc.pop(k)
            if not c:
                continue
            g = self.find_reducer(k, reducers)
            if g is None:
                rem.append((k, c))
                if not full:
                    rest = sorted(((kk, v) for kk, v in acc.items() if v), reverse=True)
                    self._count(steps)
                    return rem + rest
                continue
            shift = k - g.key
            get = acc.get
            push = heapq.heappush
            terms = g.terms
            if P:
                for n in range(1, len(terms)):
                    kk, v = terms[n]
                    kk += shift
                    old = get(kk)
                    if old is None:
                        acc[kk] = -c * v % P
                        push(heap, -kk)
                    else:
                        acc[kk] = (old - c * v) % P
            else:
                for n in range(1, len(terms)):
                    kk, v = terms[n]
                    kk += shift
                    old = get(kk)
                    if old is None:
                        acc[kk] = _norm(-c * v)
                        push(heap, -kk)
                    else:
                        acc[kk] = _norm(old - c * v)
            steps += 1
        self._count(steps)
        return rem

    def _count(self, steps):
        self.steps += steps
        if self.steps > self.budget.max_steps:
            raise BudgetExceeded("step", self.budget.max_steps)

    def spoly(self, g1: _Elem, g2: _Elem, lcm_key: int):
        s1 = lcm_key - g1.key
        s2 = lcm_key - g2.key
        a = [(k + s1, v) for k, v in g1.terms]
        return self.sub_mul(a, 0, 1, s2, g2.terms)

    # -- Buchberger
    def groebner(self, inputs, product_criterion: bool = False):
        """Run Buchberger with inputs added lazily by degree.

        Returns ``(basis, kept)``: the reduced basis as packed vectors sorted
        by increasing leading key, and the indices of inputs whose normal form
        was nonzero when they were reached.  For homogeneous inputs the kept
        inputs form a minimal generating set.
        """
        order = self.order
        pending = []
        for idx, t in enumerate(inputs):
            if t:
                pending.append((order.degree_of_key(t[0][0]), idx, t))
        pending.sort(key=lambda x: (x[0], x[1]))
        pend_pos = 0
        elems: list[_Elem] = []
        active: dict[int, list[_Elem]] = {}
        pairs: dict[tuple[int, int], tuple] = {}
        heap: list = []
        kept: list[int] = []
        maxdeg = self.budget.max_degree

        def lcm_of(e1, e2):
            return tuple(a if a > b else b for a, b in zip(e1, e2))

        def add(h_terms):
            h = _Elem(self.monic(h_terms), order, len(elems))
            elems.append(h)
            comp = h.comp
            same = active.get(comp, [])
            # Gebauer-Moeller update
            cands = []
            for g in same:
                l = lcm_of(h.exps, g.exps)
                cands.append((g, l))
            keep = []
            rest = list(cands)
            while rest:
                g, l = rest.pop(0)
                coprime = product_criterion and all(not (a and b) for a, b in zip(h.exps, g.exps))
                if coprime or not (
                    any(_divides(l2, l) for _, l2 in rest) or any(_divides(l2, l) for _, l2, _ in keep)
                ):
                    keep.append((g, l, coprime))
            # old pairs killed by h
            for key_ in [k for k, pr in pairs.items() if pr[4] == comp]:
                i, j = key_
                l = pairs[key_][5]
                if _divides(h.exps, l):
                    li = lcm_of(elems[i].exps, h.exps)
                    lj = lcm_of(elems[j].exps, h.exps)
                    if li != l and lj != l:
                        del pairs[key_]
            for g, l, coprime in keep:
                if coprime:
                    continue
                lk = order.key(comp, l)
                d = order.degree_of_key(lk)
                pk = (g.idx, h.idx)
                pairs[pk] = (d, lk, g.idx, h.idx, comp, l)
                heapq.heappush(heap, (d, lk, g.idx, h.idx))
            active[comp] = [g for g in same if not _divides(h.exps, g.exps)] + [h]

        while True:
            while heap and (heap[0][2], heap[0][3]) not in pairs:
                heapq.heappop(heap)
            pdeg = heap[0][0] if heap else None
            ideg = pending[pend_pos][0] if pend_pos < len(pending) else None
            if pdeg is None and ideg is None:
                break
            if pdeg is not None and (ideg is None or pdeg <= ideg):
                d, lk, i, j = heapq.heappop(heap)
                del pairs[(i, j)]
                if d > maxdeg:
                    raise BudgetExceeded("degree", maxdeg)
                s = self.spoly(elems[i], elems[j], lk)
                h = self.normal_form(s, active) if s else s
                if h:
                    add(h)
            else:
                d, idx, t = pending[pend_pos]
                pend_pos += 1
                if d > maxdeg:
                    raise BudgetExceeded("degree", maxdeg)
                h = self.normal_form(list(t), active)
                if h:
                    kept.append(idx)
                    add(h)
        # reduced basis
        final = []
        for comp in sorted(active):
            for g in active[comp]:
                final.append(g)
        final.sort(key=lambda g: g.key)
        out = []
        for g in final:
            others = {c: [x for x in lst if x is not g] for c, lst in active.items()}
            tail = self.normal_form(g.terms[1:], others) if len(g.terms) > 1 else []
            out.append([g.terms[0]] + tail)
        return out, kept


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class ReducerSet:
    """A fixed reduced basis wrapped for repeated normal forms."""

    def __init__(self, engine: Engine, basis):
        self.engine = engine
        self.elems = [_Elem(t, engine.order, i) for i, t in enumerate(basis)]
        self.by_comp: dict[int, list[_Elem]] = {}
        for g in self.elems:
            self.by_comp.setdefault(g.comp, []).append(g)

    def reduce(self, terms, full: bool = True):
        return self.engine.normal_form(list(terms), self.by_comp, full)
