"""Height-2 perfect ideals: Hilbert–Burch data, mapping cones and Eagon–Northcott complexes."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .groebner import GradedIdeal, Lifter, ideal_quotient
from .maps import GradedMap
from .resolve import ChainComplex, Presentation, betti_regularity_pd_depth, minimize_complex


class HypothesisError(ValueError):
    """A structural precondition failed; ``test`` names which one."""

    def __init__(self, test: str, message: str):
        super().__init__(f"{test}: {message}")
        self.test = test


# -- combinatorics -----------------------------------------------------------

def beta(m: int, t: int) -> int:
    """(-1)^m Σ_j (-1)^j j^t C(m, j), by direct summation (0^0 = 1)."""
    if m < 1 or t < 0:
        raise ValueError("need m >= 1 and t >= 0")
    total = sum((-1) ** j * j**t * comb(m, j) for j in range(m + 1))
    return (-1) ** m * total


def beta_by_derivatives(m: int, t: int) -> int:
    """Same number from A^0 = (x-1)^m, A^1 = A^0', A^{i+1} = (x A^i)', evaluated at x = 1."""
    if m < 1 or t < 0:
        raise ValueError("need m >= 1 and t >= 0")
    # coefficient lists, index = power of x
    A = [comb(m, j) * (-1) ** (m - j) for j in range(m + 1)]
    for i in range(t):
        if i > 0:
            A = [0] + A  # multiply by x
        A = [k * A[k] for k in range(1, len(A))] or [0]
    return sum(A)


def beta_table(m_max: int = 10, t_max: int = 15) -> dict:
    return {m: [beta(m, t) for t in range(t_max + 1)] for m in range(1, m_max + 1)}


def _n_closed(s: int, k: int, u: int, j: int) -> int:
    return comb(s - k, j - k + 1) * comb(u + j - 1, u - 1)


def en_counts(s: int, k: int, u: int, j: int) -> tuple[int, int]:
    """(f(j) - f(s-1), n(j)) for max(k-1, 0) <= j <= s-1.

    f is constant from k-1 on, so the first entry is always 0 on this range.
    """
    if not (0 <= k <= s and u >= 1):
        raise ValueError("need 0 <= k <= s and u >= 1")
    if not max(k - 1, 0) <= j <= s - 1:
        raise ValueError(f"j={j} outside {max(k - 1, 0)}..{s - 1}")
    return 0, _n_closed(s, k, u, j)


def alternating_sum(s: int, k: int, u: int) -> int:
    return sum((-1) ** j * _n_closed(s, k, u, j) for j in range(max(k - 1, 0), s))


def alternating_sum_nonzero(s: int, k: int, u: int) -> bool:
    return alternating_sum(s, k, u) != 0


# -- Hilbert–Burch -------------------------------------------------------------

@dataclass
class HilbertBurchData:
    I: GradedIdeal
    generators: tuple  # f_1..f_r with i_1 >= ... >= i_r
    matrix: GradedMap  # r x (r-1)
    b: tuple
    i: tuple
    u: int

    @property
    def r(self) -> int:
        return len(self.generators)

    @property
    def sigma(self) -> int:
        return sum(self.b)


def _row(ring, gens):
    return GradedMap(ring, (0,), [g.degree() for g in gens], [list(gens)])


def max_minors(psi: GradedMap) -> dict:
    """All maximal minors of a matrix with at most as many rows as columns, keyed by column set."""
    r, m = psi.nrows, psi.ncols
    E = psi.entries
    ring = psi.ring
    memo: dict = {}

    def det(k, cols):
        if k == r:
            return ring.one()
        key = cols
        if key in memo:
            return memo[key]
        acc = ring.zero()
        for p, c in enumerate(cols):
            e = E[k][c]
            if e.is_zero():
                continue
            sub = det(k + 1, cols[:p] + cols[p + 1:])
            if sub.is_zero():
                continue
            term = e * sub
            acc = acc + term if p % 2 == 0 else acc - term
        memo[key] = acc
        return acc

    return {K: det(0, K) for K in combinations(range(m), r)}


def hilbert_burch(I: GradedIdeal) -> HilbertBurchData:
    ring = I.ring
    gens = sorted(I.minimal_generators, key=lambda g: -g.degree())
    if I.is_unit() or I.height() != 2:
        raise HypothesisError("height", f"expected height 2, got {I.height()}")
    _, _, pd, _ = betti_regularity_pd_depth(Presentation.quotient_ring(GradedIdeal(ring, gens)))
    if pd != 2:
        raise HypothesisError("perfect", f"pd(R/I) = {pd}, not 2")
    from .resolve import syzygies

    S = syzygies(_row(ring, gens))
    order = sorted(range(S.ncols), key=lambda j: -S.source[j])
    M = S.submatrix(range(S.nrows), order) if order != list(range(S.ncols)) else S
    r = len(gens)
    if M.ncols != r - 1:
        raise HypothesisError("perfect", f"syzygy matrix has {M.ncols} columns, expected {r - 1}")
    minors = list(max_minors(_transpose(M)).values())
    J = GradedIdeal(ring, [x for x in minors if not x.is_zero()])
    Ig = GradedIdeal(ring, gens)
    if not (J.contains_ideal(Ig) and Ig.contains_ideal(J)):
        raise HypothesisError("minors", "maximal minors do not regenerate I")
    i_deg = tuple(g.degree() for g in gens)
    u = sum(1 for d in i_deg if d == i_deg[-1])
    return HilbertBurchData(Ig, tuple(gens), M, tuple(M.source), i_deg, u)


def _transpose(M: GradedMap) -> GradedMap:
    # plain transpose of entries; degrees are irrelevant for minors
    rows = [[M.entries[i][j] for i in range(M.nrows)] for j in range(M.ncols)]
    return GradedMap(M.ring, [0] * M.ncols, [0] * M.nrows, rows, check=False)


# -- mapping cone and Eagon–Northcott ---------------------------------------------

def mapping_cone_presentation(I: GradedIdeal, a: GradedIdeal, hb: HilbertBurchData | None = None) -> GradedMap:
    """ψ = [Hilbert–Burch matrix | coordinates of the generators of a] presenting I/a."""
    hb = hb or hilbert_burch(I)
    ring = I.ring
    gens = hb.generators
    a_gens = sorted(a.minimal_generators, key=lambda g: -g.degree()) if not a.is_zero() else []
    lifter = Lifter(ring, (0,), [[g] for g in gens], [g.degree() for g in gens]) if a_gens else None
    cols = [list(col) for col in zip(*hb.matrix.entries)] if hb.matrix.ncols else []
    src = list(hb.b)
    for x in a_gens:
        q = lifter.lift([x])
        if q is None:
            raise HypothesisError("containment", f"{x} is not in I")
        cols.append(q)
        src.append(x.degree())
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(gens))]
    return GradedMap(ring, hb.i, src, rows)


def _multisets(r: int, j: int):
    """Exponent vectors α in N^r with |α| = j, lexicographically."""
    if r == 0:
        if j == 0:
            yield ()
        return
    for first in range(j, -1, -1):
        for rest in _multisets(r - 1, j - first):
            yield (first,) + rest


def en_basis(r: int, m: int, j: int) -> list[tuple]:
    """Basis (α, K) of EN_{j+1}: |α| = j, K ⊆ {0..m-1} with |K| = r + j."""
    return [(al, K) for al in _multisets(r, j) for K in combinations(range(m), r + j)]


def eagon_northcott(psi: GradedMap, grade_check: bool = True) -> ChainComplex:
    """Eagon–Northcott complex of an r x m matrix ψ (r <= m), resolving R/I_r(ψ) at maximal grade."""
    ring = psi.ring
    r, m = psi.nrows, psi.ncols
    if r > m:
        raise ValueError("need at least as many columns as rows")
    i_deg, c_deg = psi.target, psi.source
    E = psi.entries
    shift = sum(i_deg)
    L = m - r + 1  # number of nonzero modules after R

    def degree(al, K):
        return sum(c_deg[q] for q in K) - sum(a * d for a, d in zip(al, i_deg)) - shift

    bases = [en_basis(r, m, j) for j in range(L)]
    modules = [(0,)] + [tuple(degree(al, K) for al, K in B) for B in bases]

    minors = max_minors(psi)
    maps = [GradedMap(ring, (0,), modules[1], [[minors[K] for _, K in bases[0]]])]
    for j in range(1, L):
        tgt_index = {b: n for n, b in enumerate(bases[j - 1])}
        rows = [[ring.zero()] * len(bases[j]) for _ in bases[j - 1]]
        for col, (al, K) in enumerate(bases[j]):
            for t in range(r):
                if al[t] == 0:
                    continue
                al2 = al[:t] + (al[t] - 1,) + al[t + 1:]
                for p, q in enumerate(K):
                    e = E[t][q]
                    if e.is_zero():
                        continue
                    row = tgt_index[(al2, K[:p] + K[p + 1:])]
                    rows[row][col] = rows[row][col] + (e if p % 2 == 0 else -e)
        maps.append(GradedMap(ring, modules[j], modules[j + 1], rows))
    C = ChainComplex(ring, modules, maps)
    if grade_check:
        Ir = GradedIdeal(ring, [x for x in minors.values() if not x.is_zero()])
        ht = Ir.height()
        if ht < L:
            warnings.warn(f"ht I_r(ψ) = {ht} < {L}: the complex need not be a resolution", stacklevel=2)
    return C


# -- shape bookkeeping ---------------------------------------------------------

@dataclass
class ENShape:
    c: tuple
    i: tuple
    a: tuple
    b: tuple
    k: int
    u: int
    s: int
    sigma: int  # Σ b_t (= Σ i_t), the shift of N_j[σ]
    twists: dict = field(default_factory=dict)  # j -> sorted degrees of N_j[σ]

    @property
    def r(self) -> int:
        return len(self.i)

    def f(self, j: int) -> int:
        return sum(self.c[: self.r + j]) - j * self.i[-1] - self.sigma

    def n_closed(self, j: int) -> int:
        return _n_closed(self.s, self.k, self.u, j)

    def n_direct(self, j: int) -> int:
        tw = self.twists[j]
        top = max(tw)
        return sum(1 for x in tw if x == top)

    def to_json(self):
        lo = max(self.k - 1, 0)
        return {
            "c": list(self.c),
            "i": list(self.i),
            "a": list(self.a),
            "b": list(self.b),
            "k": self.k,
            "u": self.u,
            "s": self.s,
            "f": {str(j): self.f(j) for j in range(self.s)},
            "f_max_twist": {str(j): max(self.twists[j]) for j in range(self.s)},
            "n_closed": {str(j): self.n_closed(j) for j in range(lo, self.s)},
            "n_direct": {str(j): self.n_direct(j) for j in range(lo, self.s)},
            "ranks": {str(j): len(self.twists[j]) for j in range(self.s)},
        }


def en_shape(i_deg, b_deg, a_deg) -> ENShape:
    """Integer-level data of N_j[σ]; ties in c put b-degrees before a-degrees."""
    i_deg = tuple(sorted(i_deg, reverse=True))
    a_deg = tuple(sorted(a_deg, reverse=True))
    tagged = [(x, 0) for x in b_deg] + [(x, 1) for x in a_deg]
    tagged.sort(key=lambda p: (-p[0], p[1]))
    c = tuple(x for x, _ in tagged)
    r, s = len(i_deg), len(a_deg)
    k = sum(1 for x in a_deg if x > i_deg[-1])
    u = sum(1 for x in i_deg if x == i_deg[-1])
    sigma = sum(b_deg)
    twists = {}
    for j in range(s):
        tw = [
            sum(c[q] for q in K) - sum(n * d for n, d in zip(al, i_deg)) - sigma
            for al, K in en_basis(r, len(c), j)
        ]
        twists[j] = sorted(tw)
    return ENShape(c, i_deg, a_deg, tuple(b_deg), k, u, s, sigma, twists)


def f_profile_ok(sh: ENShape) -> bool:
    """0 < f(0) < ... < f(k-1) = f(k) = ... = f(s-1)."""
    fs = [sh.f(j) for j in range(sh.s)]
    if fs[0] <= 0:
        return False
    for j in range(1, sh.s):
        if j <= sh.k - 1:
            if not fs[j] > fs[j - 1]:
                return False
        elif fs[j] != fs[j - 1]:
            return False
    return True


def refined_strict_prediction(i_deg, a_deg) -> dict:
    """Refinement for s - k = u: compare against the second-lowest generator degree of I.

    w counts generators of I at that degree and t the generators of a there;
    t <= w always, and equality with i' in place of i_r is predicted when t < w.
    """
    i_deg = sorted(i_deg, reverse=True)
    a_deg = sorted(a_deg, reverse=True)
    ir = i_deg[-1]
    s = len(a_deg)
    k = sum(1 for x in a_deg if x > ir)
    u = sum(1 for x in i_deg if x == ir)
    higher = [x for x in i_deg if x > ir]
    if s - k != u or not higher:
        return {"applicable": False}
    i2 = min(higher)
    w = sum(1 for x in i_deg if x == i2)
    t = sum(1 for x in a_deg if x == i2)
    pred = sum(a_deg) - (s - 1) * i2 - s if t < w else None
    return {"applicable": True, "second_degree": i2, "w": w, "t": t, "t_le_w": t <= w, "predicted": pred}


# -- the full pipeline ---------------------------------------------------------

@dataclass
class ENReport:
    s: int
    k: int
    u: int
    r: int
    i: tuple
    a: tuple
    b: tuple
    beg_I_mod_a: int
    predicted_general: int  # σ(a) - (s-1) beg(I/a) - s
    predicted_equality_regime: int | None  # σ(a) - (s-1) i_r - s when s-k <= u-1
    rhs_min_degree: int  # σ(a) - (s-1) i_r - s
    actual_mfr: int
    actual_en: int
    en_minimal: bool
    en_exact: bool
    h0_matches: bool
    cm_height_s: bool
    s_minus_k_le_u: bool
    case: str
    strict: bool | None
    shape: ENShape
    refined: dict
    warnings: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        ok = self.actual_mfr == self.actual_en == self.predicted_general
        if self.predicted_equality_regime is not None:
            ok = ok and self.actual_mfr == self.predicted_equality_regime
        if self.strict is not None:
            ok = ok and self.strict
        return ok and self.s_minus_k_le_u and self.en_exact and self.h0_matches and self.cm_height_s

    def to_json(self):
        return {
            "s": self.s,
            "k": self.k,
            "u": self.u,
            "r": self.r,
            "i": list(self.i),
            "a": list(self.a),
            "b": list(self.b),
            "beg_I_mod_a": self.beg_I_mod_a,
            "predicted_general": self.predicted_general,
            "predicted_equality_regime": self.predicted_equality_regime,
            "rhs_min_degree": self.rhs_min_degree,
            "actual_mfr": self.actual_mfr,
            "actual_en": self.actual_en,
            "en_minimal": self.en_minimal,
            "en_exact": self.en_exact,
            "h0_matches": self.h0_matches,
            "cm_height_s": self.cm_height_s,
            "s_minus_k_le_u": self.s_minus_k_le_u,
            "case": self.case,
            "strict": self.strict,
            "shape": self.shape.to_json(),
            "refined": self.refined,
            "consistent": self.consistent,
            "warnings": self.warnings,
        }


def en_exactness(C: ChainComplex) -> bool:
    """∂∘∂ = 0 and H_i = 0 for i >= 1."""
    if not C.is_complex():
        return False
    return all(C.is_exact_at(i) for i in range(1, len(C.modules)))


def en_regularity(I: GradedIdeal, a: GradedIdeal, budget: int = 12) -> ENReport:
    """Run the full height-2 pipeline and compare both regularity predictions with the truth."""
    from .residual import initial_degree_quotient

    hb = hilbert_burch(I)
    ring = I.ring
    a_gens = sorted(a.minimal_generators, key=lambda g: -g.degree())
    amin = GradedIdeal(ring, a_gens)
    s = len(a_gens)
    if s == 0:
        raise HypothesisError("residual", "a = 0")
    if amin.contains_ideal(hb.I):
        raise HypothesisError("residual", "J = R")
    J = ideal_quotient(amin, hb.I)
    htJ = J.height()
    if htJ < s:
        raise HypothesisError("residual", f"ht J = {htJ} < s = {s}")
    notes = []
    psi = mapping_cone_presentation(hb.I, amin, hb)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        C = eagon_northcott(psi)
    notes += [str(w.message) for w in caught]
    exact = en_exactness(C)
    H0 = Presentation.cokernel(C.d(1)).hilbert_series()
    RJ = Presentation.quotient_ring(J)
    h0_ok = H0.coefficients(0, budget) == RJ.hilbert_series().coefficients(0, budget)
    Cmin = minimize_complex(C)
    reg_en = Cmin.betti().regularity()
    _, reg, pd, dep = betti_regularity_pd_depth(RJ)
    cm = pd == s and dep == RJ.dimension()
    a_deg = tuple(x.degree() for x in a_gens)
    sh = en_shape(hb.i, hb.b, a_deg)
    sigma_a = sum(a_deg)
    ir = hb.i[-1]
    beg = initial_degree_quotient(hb.I, amin)
    general = sigma_a - (s - 1) * beg - s
    rhs = sigma_a - (s - 1) * ir - s
    if s - sh.k <= sh.u - 1:
        case, eq, strict = "equality regime (s-k <= u-1)", rhs, None
    elif s - sh.k == sh.u:
        case, eq, strict = "strict regime (s-k = u)", None, reg < rhs
    else:
        case, eq, strict = "violates s-k <= u", None, None
    return ENReport(
        s, sh.k, sh.u, hb.r, hb.i, a_deg, hb.b, beg, general, eq, rhs, reg, reg_en,
        C.is_minimal(), exact, h0_ok, cm, s - sh.k <= sh.u, case, strict, sh,
        refined_strict_prediction(hb.i, a_deg), notes,
    )
