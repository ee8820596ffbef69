"""Presentations, syzygies, minimal free resolutions and derived invariants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .groebner import GradedIdeal, SubmoduleBasis, minimal_generator_indices, syzygy_gb
from .hilbert import HilbertSeries
from .maps import GradedMap
from .ring import GradedRing


def _col_degree(col, target_degrees):
    for f, t in zip(col, target_degrees):
        if not f.is_zero():
            return f.degree() + t
    return None


def syzygies(psi: GradedMap) -> GradedMap:
    """Minimal generators of ker(psi), as a map into the source of psi."""
    ring = psi.ring
    if psi.ncols == 0:
        return GradedMap(ring, (), (), [], check=False)
    if psi.nrows == 0 or psi.is_zero():
        return GradedMap.identity(ring, psi.source)
    gens = syzygy_gb(ring, psi.target, psi.columns(), psi.source)
    if not gens:
        return GradedMap(ring, psi.source, (), [[] for _ in psi.source], check=False)
    keep = minimal_generator_indices(ring, psi.source, gens)
    cols = [gens[k] for k in keep]
    degs = [_col_degree(c, psi.source) for c in cols]
    order = sorted(range(len(cols)), key=lambda k: (degs[k], k))
    return GradedMap.from_columns(ring, psi.source, [cols[k] for k in order], [degs[k] for k in order])


def kernel_map(phi: GradedMap) -> GradedMap:
    return syzygies(phi)


def minimal_columns(A: GradedMap) -> GradedMap:
    """Restrict A to a minimal generating subset of its nonzero columns."""
    nz = [j for j in range(A.ncols) if any(not f.is_zero() for f in A.column(j))]
    if not nz or A.nrows == 0:
        return A.submatrix(range(A.nrows), [])
    keep = minimal_generator_indices(A.ring, A.target, [A.column(j) for j in nz])
    cols = [nz[k] for k in keep]
    cols.sort(key=lambda j: (A.source[j], j))
    return A.submatrix(range(A.nrows), cols)


# -- presentations -----------------------------------------------------------

class Presentation:
    """The module coker(relations), generated in the given degrees."""

    def __init__(self, ring: GradedRing, degrees, relations: GradedMap | None = None):
        self.ring = ring
        self.degrees = tuple(degrees)
        if relations is None:
            relations = GradedMap(ring, self.degrees, (), [[] for _ in self.degrees], check=False)
        if relations.target != self.degrees:
            raise ValueError("relations must map into the generators")
        self.relations = relations

    def __repr__(self):
        return f"Presentation(gens={list(self.degrees)}, relations={self.relations.ncols})"

    @classmethod
    def quotient_ring(cls, I: GradedIdeal) -> "Presentation":
        ring = I.ring
        gens = list(I.generators)
        return cls(ring, (0,), GradedMap(ring, (0,), [g.degree() for g in gens], [gens]))

    @classmethod
    def free(cls, ring, degrees) -> "Presentation":
        return cls(ring, degrees)

    @classmethod
    def cokernel(cls, phi: GradedMap) -> "Presentation":
        return cls(phi.ring, phi.target, phi)

    @classmethod
    def image(cls, A: GradedMap) -> "Presentation":
        """The submodule of the target spanned by the columns of A."""
        B = minimal_columns(A)
        return cls(A.ring, B.source, syzygies(B))

    @classmethod
    def kernel(cls, phi: GradedMap) -> "Presentation":
        return cls.image(kernel_map(phi))

    def twist(self, k: int) -> "Presentation":
        """M(k): generator degrees drop by k."""
        rel = self.relations
        return Presentation(
            self.ring,
            [d - k for d in self.degrees],
            GradedMap(self.ring, [d - k for d in rel.target], [d - k for d in rel.source], rel.entries, check=False),
        )

    def hilbert_series(self) -> HilbertSeries:
        return SubmoduleBasis(self.ring, self.degrees, self.relations.columns()).quotient_hilbert_series()

    def is_zero(self) -> bool:
        return self.hilbert_series().is_zero()

    def dimension(self) -> int:
        return self.hilbert_series().dimension()

    def pruned(self) -> "Presentation":
        degs, rel = prune(self.degrees, self.relations)
        return Presentation(self.ring, degs, rel)


def _cancel_unit(rows, tgt, src, i0, j0, field):
    """Column operations clearing row i0 via the unit at (i0, j0); drop both."""
    u_inv = field.inv(rows[i0][j0].constant_coefficient())
    pivot_col = [r[j0] for r in rows]
    for j in range(len(src)):
        if j == j0:
            continue
        a = rows[i0][j]
        if a.is_zero():
            continue
        fac = a.scale(u_inv)
        for r in range(len(rows)):
            if not pivot_col[r].is_zero():
                rows[r][j] = rows[r][j] - fac * pivot_col[r]
    del rows[i0]
    for r in rows:
        del r[j0]
    tgt = tgt[:i0] + tgt[i0 + 1:]
    src = src[:j0] + src[j0 + 1:]
    return rows, tgt, src


def _pick_unit(rows, tgt):
    best = None
    for i, row in enumerate(rows):
        for j, f in enumerate(row):
            if not f.is_zero() and f.is_constant():
                cand = (tgt[i], i, j)
                if best is None or cand < best:
                    best = cand
    return None if best is None else best[1:]


def prune(degrees, relations: GradedMap):
    """Minimal presentation: cancel unit entries, then keep minimal relations."""
    ring = relations.ring
    rows = [list(r) for r in relations.entries]
    tgt, src = tuple(degrees), tuple(relations.source)
    while True:
        pos = _pick_unit(rows, tgt)
        if pos is None:
            break
        rows, tgt, src = _cancel_unit(rows, tgt, src, pos[0], pos[1], ring.field)
    rel = GradedMap(ring, tgt, src, rows if tgt else [], check=False)
    return tgt, minimal_columns(rel)


# -- complexes ---------------------------------------------------------------

@dataclass
class BettiTable:
    """β_{i,j}: number of generators of degree j in homological degree i."""

    data: dict = field(default_factory=dict)

    @classmethod
    def from_modules(cls, modules) -> "BettiTable":
        data: dict = {}
        for i, degs in enumerate(modules):
            for d in degs:
                data[(i, d)] = data.get((i, d), 0) + 1
        return cls(data)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.data == other.data

    def regularity(self):
        return max((j - i for (i, j) in self.data), default=None)

    def length(self):
        return max((i for (i, _) in self.data), default=None)

    def totals(self) -> list[int]:
        L = self.length()
        if L is None:
            return []
        return [sum(v for (i, _), v in self.data.items() if i == k) for k in range(L + 1)]

    def staircase(self) -> str:
        if not self.data:
            return "0"
        L = self.length()
        rows = sorted({j - i for (i, j) in self.data})
        lo, hi = rows[0], rows[-1]
        tot = self.totals()
        width = max(len(str(v)) for v in tot + list(range(L + 1)))
        lab = max(len(f"{r}:") for r in range(lo, hi + 1))
        lab = max(lab, len("total:"))
        lines = [" " * (lab + 1) + " ".join(str(i).rjust(width) for i in range(L + 1))]
        lines.append("total:".rjust(lab) + " " + " ".join(str(v).rjust(width) for v in tot))
        for r in range(lo, hi + 1):
            cells = [str(self.data.get((i, i + r), ".")).rjust(width) for i in range(L + 1)]
            lines.append(f"{r}:".rjust(lab) + " " + " ".join(cells))
        return "\n".join(lines)

    def to_json(self):
        return {f"{i},{j}": v for (i, j), v in sorted(self.data.items())}


class ChainComplex:
    """0 <- F_0 <- F_1 <- ... <- F_L with maps[k] = d_{k+1}: F_{k+1} -> F_k."""

    def __init__(self, ring: GradedRing, modules, maps):
        self.ring = ring
        self.modules = [tuple(m) for m in modules]
        self.maps = list(maps)
        if len(self.maps) != max(len(self.modules) - 1, 0):
            raise ValueError("need one map between consecutive modules")
        for k, d in enumerate(self.maps):
            if d.target != self.modules[k] or d.source != self.modules[k + 1]:
                raise ValueError(f"map d_{k + 1} has the wrong twists")

    @property
    def length(self) -> int:
        L = len(self.modules) - 1
        while L > 0 and not self.modules[L]:
            L -= 1
        return L

    def d(self, i: int) -> GradedMap:
        """Differential F_i -> F_{i-1}."""
        return self.maps[i - 1]

    def is_complex(self) -> bool:
        return all((self.maps[k] * self.maps[k + 1]).is_zero() for k in range(len(self.maps) - 1))

    def is_minimal(self) -> bool:
        return all(d.is_minimal() for d in self.maps)

    def betti(self) -> BettiTable:
        return BettiTable.from_modules(self.modules)

    def ranks(self) -> list[int]:
        return [len(m) for m in self.modules]

    def euler_hilbert_series(self) -> HilbertSeries:
        w = self.ring.weights
        num: dict = {}
        for i, degs in enumerate(self.modules):
            for d in degs:
                num[d] = num.get(d, 0) + (-1) ** i
        return HilbertSeries(num, w)

    def homology(self, i: int) -> Presentation:
        """H_i = ker d_i / im d_{i+1}."""
        ring = self.ring
        Fi = self.modules[i] if i < len(self.modules) else ()
        if i == 0:
            Z = GradedMap.identity(ring, Fi)
        else:
            Z = kernel_map(self.d(i))
        if i + 1 < len(self.modules):
            B = self.d(i + 1)
        else:
            B = GradedMap(ring, Fi, (), [[] for _ in Fi], check=False)
        return subquotient(Z, B)

    def is_exact_at(self, i: int) -> bool:
        """ker d_i ⊆ im d_{i+1}, tested by submodule membership of kernel generators."""
        if i <= 0 or i >= len(self.modules) or not self.modules[i]:
            return True
        Z = kernel_map(self.d(i))
        if Z.ncols == 0:
            return True
        if i + 1 >= len(self.modules) or not self.modules[i + 1]:
            return False
        image = SubmoduleBasis(self.ring, self.modules[i], self.d(i + 1).columns())
        return all(image.contains(col) for col in Z.columns())

    def minimized(self) -> "ChainComplex":
        return minimize_complex(self)


def subquotient(Z: GradedMap, B: GradedMap) -> Presentation:
    """im Z / im B for im B ⊆ im Z, as a pruned presentation on the columns of Z."""
    ring = Z.ring
    if Z.ncols == 0:
        return Presentation(ring, ())
    if B.ncols == 0 or B.is_zero():
        return Presentation.image(Z)
    big = Z.hstack(B)
    s = syzygies(big)
    n = Z.ncols
    rows = [list(s.entries[k]) for k in range(n)]
    rel = GradedMap(ring, Z.source, s.source, rows, check=False)
    degs, rel = prune(Z.source, rel)
    return Presentation(ring, degs, rel)


def minimal_free_resolution(M: Presentation, max_length: int | None = None) -> ChainComplex:
    ring = M.ring
    degs, phi = prune(M.degrees, M.relations)
    modules = [degs]
    maps = []
    cur = phi
    while cur.ncols > 0:
        if max_length is not None and len(maps) >= max_length:
            break
        maps.append(cur)
        modules.append(cur.source)
        cur = syzygies(cur)
    return ChainComplex(ring, modules, maps)


def betti_regularity_pd_depth(M: Presentation):
    """(Betti table, reg, pd, depth); the zero module gives (empty, None, None, inf)."""
    C = minimal_free_resolution(M)
    B = C.betti()
    if not B.data:
        return B, None, None, math.inf
    pd = B.length()
    return B, B.regularity(), pd, M.ring.nvars - pd


def depth(M: Presentation):
    return betti_regularity_pd_depth(M)[3]


def is_cohen_macaulay(M: Presentation) -> bool:
    """depth == dim; the zero module counts as Cohen–Macaulay."""
    _, _, pd, dep = betti_regularity_pd_depth(M)
    if pd is None:
        return True
    return dep == M.dimension()


def ext_module(M: Presentation, i: int, resolution: ChainComplex | None = None) -> Presentation:
    """Ext^i_R(M, R) from the dual of a minimal resolution."""
    if i < 0:
        raise ValueError("Ext index must be nonnegative")
    C = resolution if resolution is not None else minimal_free_resolution(M)
    ring = M.ring
    if i >= len(C.modules) or not C.modules[i]:
        return Presentation(ring, ())
    dual_i = tuple(-d for d in C.modules[i])
    if i + 1 < len(C.modules) and C.modules[i + 1]:
        Z = kernel_map(C.d(i + 1).transpose())
    else:
        Z = GradedMap.identity(ring, dual_i)
    if i >= 1:
        B = C.d(i).transpose()
    else:
        B = GradedMap(ring, dual_i, (), [[] for _ in dual_i], check=False)
    return subquotient(Z, B)


def minimize_complex(C: ChainComplex) -> ChainComplex:
    """Split off trivial summands R(-d) -> R(-d) until no unit entries remain."""
    ring = C.ring
    F = ring.field
    mods = [list(m) for m in C.modules]
    mats = [[list(r) for r in d.entries] for d in C.maps]
    while True:
        hit = None
        for k, rows in enumerate(mats):
            pos = _pick_unit(rows, mods[k])
            if pos is not None:
                hit = (k, pos)
                break
        if hit is None:
            break
        k, (i0, j0) = hit
        rows = mats[k]
        u_inv = F.inv(rows[i0][j0].constant_coefficient())
        piv_col = [r[j0] for r in rows]
        piv_row = rows[i0]
        for a in range(len(rows)):
            if a == i0 or piv_col[a].is_zero():
                continue
            fac = piv_col[a].scale(u_inv)
            for b in range(len(piv_row)):
                if b != j0 and not piv_row[b].is_zero():
                    rows[a][b] = rows[a][b] - fac * piv_row[b]
        del rows[i0]
        for r in rows:
            del r[j0]
        # d_{k+2}: F_{k+2} -> F_{k+1} loses row j0; d_k: F_k -> F_{k-1} loses column i0
        if k + 1 < len(mats):
            del mats[k + 1][j0]
        if k - 1 >= 0:
            for r in mats[k - 1]:
                del r[i0]
        del mods[k][i0]
        del mods[k + 1][j0]
    maps = [GradedMap(ring, mods[k], mods[k + 1], mats[k] if mods[k] else [], check=False) for k in range(len(mats))]
    while len(mods) > 1 and not mods[-1]:
        mods.pop()
        maps.pop()
    return ChainComplex(ring, mods, maps)
