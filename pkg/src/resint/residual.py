"""Residual intersections J = a : I, their hypotheses and their conclusions."""

from __future__ import annotations

import hashlib
import math
import warnings
from dataclasses import dataclass, field
from math import comb

from .groebner import GradedIdeal, ideal_power, ideal_quotient
from .koszul import KoszulData, check_G_minus, check_Gs, check_SCM, check_SD, check_SDC
from .resolve import Presentation, betti_regularity_pd_depth, ext_module, is_cohen_macaulay


class ResidualError(ValueError):
    pass


def ideal_hash(I: GradedIdeal) -> str:
    text = "\n".join(str(g) for g in I.generators)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _sorted_desc(gens):
    return sorted(gens, key=lambda g: -g.degree())


def _minimal_sorted(I: GradedIdeal) -> GradedIdeal:
    return GradedIdeal(I.ring, _sorted_desc(I.minimal_generators))


@dataclass
class ResidualData:
    ring: object
    I: GradedIdeal
    a: GradedIdeal
    J: GradedIdeal
    s: int
    g: int
    sigma_a: int
    beg_I_mod_a: int | None
    flags: dict = field(default_factory=dict)
    reports: dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return len(self.I.generators)

    @property
    def trivial(self) -> bool:
        return self.flags.get("trivial", False)

    def koszul(self) -> KoszulData:
        if "_koszul" not in self.reports:
            self.reports["_koszul"] = KoszulData(self.I.generators)
        return self.reports["_koszul"]


def initial_degree_quotient(I: GradedIdeal, a: GradedIdeal):
    """beg(I/a): least degree where I and a differ (None if equal)."""
    hs = a.hilbert_series - I.hilbert_series
    return hs.initial_degree()


def build_residual(a: GradedIdeal, I: GradedIdeal, hypotheses: bool = True) -> ResidualData:
    """Compute J = a : I together with the residual-intersection flags."""
    if a.ring != I.ring:
        raise ResidualError("ring mismatch")
    ring = I.ring
    for x in a.generators:
        if not I.contains(x):
            raise ResidualError(f"a is not contained in I: {x}")
    Imin = _minimal_sorted(I)
    amin_gens = _sorted_desc(a.minimal_generators)
    if len(amin_gens) != len(a.generators):
        warnings.warn(
            f"generators of a were not minimal; using {len(amin_gens)} of {len(a.generators)}",
            stacklevel=2,
        )
    amin = GradedIdeal(ring, amin_gens)
    s = len(amin_gens)
    sigma = sum(x.degree() for x in amin_gens)
    g = Imin.height()
    trivial = amin.contains_ideal(Imin)
    if trivial:
        J = GradedIdeal(ring, [ring.one()])
        beg = None
    else:
        J = ideal_quotient(amin, Imin)
        beg = initial_degree_quotient(Imin, amin)
    htJ = J.height()
    flags = {
        "trivial": trivial,
        "is_residual": (not trivial) and htJ >= s and s >= g,
        "height_J": "inf" if htJ == math.inf else htJ,
    }
    # geometric-ness only qualifies genuine residual intersections
    flags["is_geometric"] = flags["is_residual"] and (Imin + J).height() >= s + 1
    data = ResidualData(ring, Imin, amin, J, s, g, sigma, beg, flags)
    if hypotheses and not trivial:
        evaluate_hypotheses(data)
    return data


def evaluate_hypotheses(data: ResidualData) -> None:
    K = data.koszul()
    r, g, s = data.r, data.g, data.s
    sd0 = check_SD(K, 0, r - g)
    sd1 = check_SD(K, 1, r - g)
    sdc1 = check_SDC(K, 1, min(s - g, r - g)) if s >= g else None
    scm = check_SCM(K)
    gs = check_Gs(data.I, s)
    gminus = check_G_minus(data.I, s + 1)
    data.reports.update({"SD": sd0, "SD1": sd1, "SDC1": sdc1, "SCM": scm})
    route = None
    if data.flags["is_geometric"]:
        route = "geometric"
    elif gminus:
        route = "G-_{s+1}"
    data.flags.update(
        {
            "SD": sd0.passed,
            "SD1": sd1.passed,
            "SDC1": None if sdc1 is None else sdc1.passed,
            "SCM": scm["pass"],
            "Gs": gs,
            "G_minus_s1": gminus,
            "local_mu_condition": route,
        }
    )


def verify_cm_conclusion(data: ResidualData) -> dict:
    """Check that R/J is Cohen–Macaulay of height s and record which hypotheses held."""
    if data.trivial or not data.flags.get("is_residual"):
        return {"status": "hypotheses fail", "cm": None}
    M = Presentation.quotient_ring(data.J)
    cm = is_cohen_macaulay(M)
    height = data.J.height()
    f = data.flags
    routes = {
        "SD + geometric": bool(f.get("SD")) and bool(f.get("is_geometric")),
        "SDC1 + local one-generator condition": bool(f.get("SDC1")) and f.get("local_mu_condition") is not None,
    }
    partial = any([f.get("SD"), f.get("SDC1"), f.get("is_geometric"), f.get("local_mu_condition")])
    if any(routes.values()):
        status = "verified"
    elif partial:
        status = "partially verified"
    else:
        status = "unverified"
    ok = cm and height == data.s
    return {
        "status": status,
        "routes": routes,
        "cm": cm,
        "height": height,
        "conclusion_holds": ok,
        "consistent": ok or status != "verified",
    }


def _reg_quotient(J: GradedIdeal):
    _, reg, pd, _ = betti_regularity_pd_depth(Presentation.quotient_ring(J))
    return reg


def tightness(data: ResidualData) -> bool:
    """Is the degree e·beg piece of (I^e + J)/J nonzero, e = s-g+1?"""
    e = data.s - data.g + 1
    delta = e * data.beg_I_mod_a
    Ie = ideal_power(data.I, e)
    hs = data.J.hilbert_series - (Ie + data.J).hilbert_series
    return hs.coefficient(delta) != 0


def regularity_bound(data: ResidualData):
    """(bound, actual, holds, tight) with bound = σ(a) - (s-g+1)·beg(I/a) - s.

    J = R, or an input that is not a residual intersection, yields the
    sentinel (None, None, None, None).
    """
    if data.trivial or data.J.is_unit() or not data.flags.get("is_residual"):
        return None, None, None, None
    bound = data.sigma_a - (data.s - data.g + 1) * data.beg_I_mod_a - data.s
    actual = _reg_quotient(data.J)
    return bound, actual, actual <= bound, tightness(data)


def canonical_module_check(data: ResidualData, budget: int = 12) -> dict:
    """Compare HS of Ext^s(R/J,R)(b) with HS of ((I^e+J)/J)(b+σ(a)), b = -Σ weights."""
    f = data.flags
    hyps = {"geometric": f.get("is_geometric"), "Gs": f.get("Gs"), "SCM": f.get("SCM")}
    if not all(hyps.values()):
        return {"status": "inconclusive", "hypotheses": hyps}
    ring = data.ring
    b = -sum(ring.weights)
    e = data.s - data.g + 1
    E = ext_module(Presentation.quotient_ring(data.J), data.s)
    # HS(M(k)) = t^{-k} HS(M)
    left = E.hilbert_series().shift(-b)
    Ie = ideal_power(data.I, e)
    N = data.J.hilbert_series - (Ie + data.J).hilbert_series
    right = N.shift(-(b + data.sigma_a))
    lo = min(x for x in (left.initial_degree(), right.initial_degree(), 0) if x is not None)
    lc = left.coefficients(lo, budget)
    rc = right.coefficients(lo, budget)
    first = next((lo + k for k, (x, y) in enumerate(zip(lc, rc)) if x != y), None)
    return {
        "status": "compared",
        "hypotheses": hyps,
        "degrees": [lo, budget],
        "truncated": True,
        "omega": lc,
        "power_side": rc,
        "match": first is None,
        "first_discrepancy": first,
        "series_equal": left == right,
    }


# -- complex bookkeeping -----------------------------------------------------

def beg_formula(r: int, g: int, s: int, i: int) -> int:
    """Closed formula for the initial T-degree of D_i."""
    if 0 <= i <= r - g:
        return i
    if r - g + 1 <= i <= r - 1:
        return r - g + 1
    if r <= i <= r + s - 1:
        return i - g + 2
    raise ValueError("index out of range")


@dataclass
class ComplexShape:
    r: int
    g: int
    s: int
    z_prime: dict  # position -> list of summands
    d: dict  # position -> list of summands
    z_plus: dict  # label j -> list of (module, multiplicity)
    beg: dict  # position -> initial T-degree from twists
    top: dict  # position -> largest T-degree from twists
    f_degrees: tuple = ()
    a_degrees: tuple = ()

    def beg_mismatches(self) -> list[int]:
        return [i for i, b in self.beg.items() if b != beg_formula(self.r, self.g, self.s, i)]

    def to_json(self):
        return {
            "r": self.r,
            "g": self.g,
            "s": self.s,
            "Z_prime": {str(k): v for k, v in self.z_prime.items()},
            "D": {str(k): v for k, v in self.d.items()},
            "Z_plus": {str(k): v for k, v in self.z_plus.items()},
            "beg_D": {str(k): v for k, v in self.beg.items()},
            "beg_formula": {str(i): beg_formula(self.r, self.g, self.s, i) for i in self.beg},
            "top_D": {str(k): v for k, v in self.top.items()},
        }


def _z_prime(r: int, g: int, p: int) -> list[dict]:
    """Summands of Z'_p: module label, R-rank and T-shift."""
    if p <= r - g:
        return [{"module": f"Z_{p}", "rank": comb(r - 1, p), "shift": p, "free": False}]
    return [
        {"module": f"K_{p + 1}", "rank": comb(r, p + 1), "shift": q, "free": True}
        for q in range(r - g + 1, p + 1)
    ]


def shape_tables(r: int, g: int, s: int) -> ComplexShape:
    if not (1 <= g <= r and s >= g):
        raise ValueError("need 1 <= g <= r and s >= g")
    zp = {p: _z_prime(r, g, p) for p in range(r)}
    D: dict = {}
    for i in range(r + s):
        parts = []
        for j in range(0, s + 1):
            p = i - j
            if 0 <= p <= r - 1:
                for summ in zp[p]:
                    parts.append({**summ, "shift": summ["shift"] + j, "mult": comb(s, j), "koszul_index": j})
        D[i] = parts
    beg = {i: min(x["shift"] for x in D[i]) for i in D}
    top = {i: max(x["shift"] for x in D[i]) for i in D}
    zplus: dict = {}
    for jlab in range(r - s, r):
        i = jlab + s
        mods: dict = {}
        for x in D.get(i, []):
            k = x["shift"]
            if k >= r:
                m = x["mult"] * comb(k - 1, r - 1)
                mods[x["module"]] = mods.get(x["module"], 0) + m
        zplus[jlab] = sorted(mods.items())
    return ComplexShape(r, g, s, zp, D, zplus, beg, top)


def complex_shapes(f, a_degrees) -> ComplexShape:
    """Bookkeeping tables for generators f of I and the degrees of a."""
    I = GradedIdeal(f[0].ring, f)
    g = I.height()
    sh = shape_tables(len(f), g, len(a_degrees))
    sh.f_degrees = tuple(x.degree() for x in f)
    sh.a_degrees = tuple(a_degrees)
    return sh


def intersection_is_a(data: ResidualData, max_degree: int = 6) -> bool:
    """Graded-piece check of I ∩ J = a up to max_degree."""
    from .groebner import intersect

    inter = intersect(data.I, data.J)
    diff = inter.hilbert_series - data.a.hilbert_series
    return all(c == 0 for c in diff.coefficients(0, max_degree))


def residual_report(data: ResidualData, budget: int = 12, canonical: bool = True) -> dict:
    """JSON-ready summary of a residual intersection."""
    bound, actual, holds, tight = regularity_bound(data)
    cm = verify_cm_conclusion(data)
    if canonical and data.flags.get("is_residual"):
        can = canonical_module_check(data, budget)
    else:
        can = {"status": "skipped"}
    flags = {k: v for k, v in data.flags.items()}
    return {
        "ideal_hashes": {"I": ideal_hash(data.I), "a": ideal_hash(data.a), "J": ideal_hash(data.J)},
        "J": [str(x) for x in data.J.generators],
        "s": data.s,
        "g": data.g,
        "sigma_a": data.sigma_a,
        "beg_I_mod_a": data.beg_I_mod_a,
        "flags": flags,
        "reg_bound": bound,
        "reg_actual": actual,
        "reg_bound_holds": holds,
        "tight": tight,
        "reg_equality": None if bound is None else bound == actual,
        "cm": cm,
        "canonical_match": can.get("match") if can.get("status") == "compared" else None,
        "canonical": can,
    }
