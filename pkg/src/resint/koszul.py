"""Koszul complexes, their cycles and homology, and depth-condition checkers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .groebner import GradedIdeal, fitting_ideal
from .maps import GradedMap
from .resolve import (
    ChainComplex,
    Presentation,
    betti_regularity_pd_depth,
    kernel_map,
    subquotient,
    syzygies,
)


def _json_num(x):
    return "inf" if x == math.inf else x


@dataclass
class DepthRow:
    index: int
    depth: float
    threshold: int
    passed: bool

    def to_json(self):
        return {"index": self.index, "depth": _json_num(self.depth), "threshold": self.threshold, "pass": self.passed}


@dataclass
class ConditionReport:
    name: str
    k: int
    level: int
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_json(self):
        return {
            "condition": self.name,
            "k": self.k,
            "level": self.level,
            "pass": self.passed,
            "rows": [r.to_json() for r in self.rows],
        }


class KoszulData:
    """K(f; R) for homogeneous nonzero f_1..f_r, with cached cycles and homology."""

    def __init__(self, f):
        f = list(f)
        if not f:
            raise ValueError("need at least one element")
        ring = f[0].ring
        for x in f:
            ring.check(x)
            if x.is_zero() or not x.is_homogeneous():
                raise ValueError(f"{x} must be homogeneous and nonzero")
        self.ring = ring
        self.f = tuple(f)
        self.r = len(f)
        self.degrees = tuple(x.degree() for x in f)
        self.subsets = [list(combinations(range(self.r), i)) for i in range(self.r + 1)]
        self.twists = [[sum(self.degrees[t] for t in S) for S in subs] for subs in self.subsets]
        self._cycles: dict[int, Presentation] = {}
        self._homology: dict[int, Presentation] = {}
        self._depth: dict[tuple, float] = {}

    @cached_property
    def ideal(self) -> GradedIdeal:
        return GradedIdeal(self.ring, self.f)

    @property
    def d(self) -> int:
        return self.ring.nvars

    @cached_property
    def g(self) -> int:
        return self.ideal.height()

    def differential(self, i: int) -> GradedMap:
        """∂_i: K_i -> K_{i-1}, e_S ↦ Σ_p (-1)^p f_{S_p} e_{S \\ S_p}."""
        ring = self.ring
        src, tgt = self.subsets[i], self.subsets[i - 1]
        pos = {S: n for n, S in enumerate(tgt)}
        rows = [[ring.zero()] * len(src) for _ in tgt]
        for j, S in enumerate(src):
            for p, t in enumerate(S):
                T = S[:p] + S[p + 1:]
                rows[pos[T]][j] = self.f[t] if p % 2 == 0 else -self.f[t]
        return GradedMap(ring, self.twists[i - 1], self.twists[i], rows)

    @cached_property
    def complex(self) -> ChainComplex:
        return ChainComplex(self.ring, self.twists, [self.differential(i) for i in range(1, self.r + 1)])

    def _check_index(self, i):
        if not 0 <= i <= self.r:
            raise IndexError(f"Koszul index {i} outside 0..{self.r}")

    def cycles(self, i: int) -> Presentation:
        self._check_index(i)
        if i not in self._cycles:
            if i == 0:
                self._cycles[i] = Presentation.free(self.ring, self.twists[0])
            else:
                self._cycles[i] = Presentation.kernel(self.differential(i))
        return self._cycles[i]

    def cycle_map(self, i: int) -> GradedMap:
        """Inclusion Z_i -> K_i given by minimal generators."""
        self._check_index(i)
        if i == 0:
            return GradedMap.identity(self.ring, self.twists[0])
        return kernel_map(self.differential(i))

    def homology(self, i: int) -> Presentation:
        self._check_index(i)
        if i not in self._homology:
            if i == 0:
                self._homology[i] = Presentation.cokernel(self.differential(1)).pruned()
            else:
                Z = kernel_map(self.differential(i))
                if i < self.r:
                    B = self.differential(i + 1)
                else:
                    B = GradedMap(self.ring, self.twists[i], (), [[] for _ in self.twists[i]], check=False)
                self._homology[i] = subquotient(Z, B)
        return self._homology[i]

    def depth_of(self, kind: str, i: int) -> float:
        key = (kind, i)
        if key not in self._depth:
            M = self.cycles(i) if kind == "Z" else self.homology(i)
            self._depth[key] = betti_regularity_pd_depth(M)[3]
        return self._depth[key]


def koszul_complex(f) -> KoszulData:
    return KoszulData(f)


def koszul_cycles(K: KoszulData, i: int) -> Presentation:
    return K.cycles(i)


def koszul_homology(K: KoszulData, i: int) -> Presentation:
    return K.homology(i)


def check_SD(K: KoszulData, k: int, t: int) -> ConditionReport:
    """depth H_i >= min(d-g, d-r+i+k) for i >= r-g-t."""
    d, g, r = K.d, K.g, K.r
    rep = ConditionReport("SD", k, t)
    for i in range(max(0, r - g - t), r + 1):
        thr = min(d - g, d - r + i + k)
        dep = K.depth_of("H", i)
        rep.rows.append(DepthRow(i, dep, thr, dep >= thr))
    return rep


def check_SDC(K: KoszulData, k: int, t: int) -> ConditionReport:
    """depth Z_i >= min(d-r+i+k, d-g+2, d) for r-g-t <= i <= r-g."""
    d, g, r = K.d, K.g, K.r
    rep = ConditionReport("SDC", k, t)
    for i in range(max(0, r - g - t), r - g + 1):
        thr = min(d - r + i + k, d - g + 2, d)
        dep = K.depth_of("Z", i)
        rep.rows.append(DepthRow(i, dep, thr, dep >= thr))
    return rep


def syzygy_presentation(I: GradedIdeal) -> GradedMap:
    """Minimal presentation matrix of I (its first syzygies)."""
    gens = list(I.minimal_generators)
    ring = I.ring
    row = GradedMap(ring, (0,), [g.degree() for g in gens], [gens])
    return syzygies(row)


def fitting_heights(I: GradedIdeal, top: int) -> dict[int, float]:
    """ht Fitt_i(I) for 1 <= i <= top."""
    psi = syzygy_presentation(I)
    return {i: fitting_ideal(psi, i).height() for i in range(1, top + 1)}


def check_Gs(I: GradedIdeal, s: int) -> bool:
    """G_s: ht Fitt_i(I) >= i+1 for 1 <= i <= s-1."""
    if s < 1:
        raise ValueError("s must be positive")
    if s == 1:
        return True
    hts = fitting_heights(I, s - 1)
    return all(hts[i] >= i + 1 for i in hts)


def check_G_minus(I: GradedIdeal, s: int) -> bool:
    """Weak condition μ(I_p) <= ht p + 1 for ht p <= s-1: ht Fitt_i(I) >= i for 1 <= i <= s."""
    if s < 1:
        raise ValueError("s must be positive")
    hts = fitting_heights(I, s)
    return all(hts[i] >= i for i in hts)


def check_SCM(K: KoszulData) -> dict:
    """Strong Cohen–Macaulayness: every nonzero H_i is Cohen–Macaulay."""
    rows = []
    for i in range(K.r + 1):
        H = K.homology(i)
        dep = K.depth_of("H", i)
        dim = H.dimension()
        cm = dep == math.inf or dep == dim
        rows.append({"index": i, "depth": _json_num(dep), "dim": dim, "cm": cm})
    return {"pass": all(r["cm"] for r in rows), "rows": rows}


def classify_depth_Ztop(K: KoszulData) -> dict:
    """Compare depth Z_{r-g} with the value predicted by the case split."""
    d, g, r = K.d, K.g, K.r
    i = r - g
    dep = K.depth_of("Z", i)
    if g == 1 or r == g:
        case, expected = "g=1 or regular sequence", d
    else:
        from .resolve import is_cohen_macaulay

        if is_cohen_macaulay(K.homology(0)):
            case, expected = "g>=2, R/I Cohen-Macaulay, not a regular sequence", d - g + 2
        else:
            return {
                "index": i,
                "depth": _json_num(dep),
                "case": "untested hypothesis (unmixedness not implemented)",
                "expected": None,
                "match": None,
            }
    return {"index": i, "depth": _json_num(dep), "case": case, "expected": expected, "match": dep == expected}


def check_tail_cycle_depths(K: KoszulData) -> list[dict]:
    """depth Z_i = d - r + i + 1 for r-g+1 <= i <= r-1."""
    d, g, r = K.d, K.g, K.r
    out = []
    for i in range(r - g + 1, r):
        dep = K.depth_of("Z", i)
        exp = d - r + i + 1
        out.append({"index": i, "depth": _json_num(dep), "expected": exp, "match": dep == exp})
    return out
