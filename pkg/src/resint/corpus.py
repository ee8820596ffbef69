"""Built-in example corpus: fixed-seed residual intersections and the summary run."""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field

from .groebner import GradedIdeal
from .ring import Field, GradedRing, create_ring


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    field: int  # 0 for Q
    variables: tuple
    I: tuple  # generator strings
    a: tuple
    tags: frozenset = field(default_factory=frozenset)

    def ring(self, field_override: int | None = None) -> GradedRing:
        p = self.field if field_override is None else field_override
        return create_ring(Field(p), list(self.variables))

    def ideals(self, field_override: int | None = None):
        R = self.ring(field_override)
        return R, GradedIdeal(R, list(self.I)), GradedIdeal(R, list(self.a))

    def job_text(self, command: str = "residual") -> str:
        fld = "Q" if self.field == 0 else f"Fp {self.field}"
        return "\n".join(
            [
                f"# corpus entry {self.name}",
                f"field {fld}",
                f"ring {','.join(self.variables)}",
                f"ideal I = {', '.join(self.I)}",
                f"ideal a = {', '.join(self.a)}",
                f"command {command}",
                "",
            ]
        )


# -- deterministic generators ------------------------------------------------

def _form(R, d, rng):
    acc = R.zero()
    for m in R.monomials_of_degree(d):
        acc = acc + R.monomial(m) * rng.randint(-3, 3)
    return acc


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = rows[0][0].ring.zero()
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def hilbert_burch_ideal(R, row_degrees, rng):
    """Maximal minors of an r x (r-1) matrix whose row t has entries of degree row_degrees[t]."""
    r = len(row_degrees)
    M = [[_form(R, row_degrees[i], rng) for _ in range(r - 1)] for i in range(r)]
    gens = []
    for i in range(r):
        gens.append(_det([M[k] for k in range(r) if k != i]))
    return gens


def general_element(R, gens, d, rng):
    acc = R.zero()
    for f in gens:
        if f.degree() <= d:
            acc = acc + _form(R, d - f.degree(), rng) * f
    return acc


def _entry(name, p, variables, I_gens, a_gens, tags):
    return CorpusEntry(name, p, tuple(variables), tuple(str(x) for x in I_gens), tuple(str(x) for x in a_gens), frozenset(tags))


def _generated(name, nvars, row_degrees, a_degrees, seed, tags, p=32003):
    rng = random.Random(seed)
    R = create_ring(Field(p), [f"x{i}" for i in range(nvars)])
    I_gens = hilbert_burch_ideal(R, row_degrees, rng)
    a_gens = [general_element(R, I_gens, d, rng) for d in a_degrees]
    return _entry(name, p, R.variables, I_gens, a_gens, tags)


def _with_a(name, p, variables, I_strs, a_degrees, seed, tags):
    rng = random.Random(seed)
    R = create_ring(Field(p), list(variables))
    I_gens = [R.parse(x) for x in I_strs]
    a_gens = [general_element(R, I_gens, d, rng) for d in a_degrees]
    return _entry(name, p, variables, I_gens, a_gens, tags)


def build_corpus() -> list[CorpusEntry]:
    h2 = {"height2"}
    out = [
        CorpusEntry(
            "link_2x3",
            0,
            ("x", "y", "z"),
            ("x*z - y^2", "x^2 - y*z", "x*y - z^2"),
            ("x*z - y^2", "x^2 - y*z"),
            frozenset(h2 | {"link", "canonical"}),
        ),
        _with_a("twisted_cubic_s3", 32003, "xyzw", ["x*z - y^2", "x*w - y*z", "y*w - z^2"], [3, 2, 2], 2, h2 | {"canonical"}),
        _with_a(
            "generic_2x3_s3",
            32003,
            "abcdef",
            ["a*e - b*d", "a*f - c*d", "b*f - c*e"],
            [3, 2, 2],
            2,
            h2 | {"canonical", "generic"},
        ),
        _generated("hb3_mixed_s2_strict", 3, [1, 1, 2], [3, 2], 1, h2),
        _generated("hb3_mixed_s2", 3, [1, 1, 2], [3, 3], 7, h2),
        _generated("hb3_mixed_s3_strict", 4, [1, 1, 2], [4, 3, 2], 1, h2),
        _generated("hb4_linear_s2", 4, [1, 1, 1, 1], [3, 3], 1, h2),
        _generated("hb4_linear_s3", 4, [1, 1, 1, 1], [4, 3, 3], 1, h2 | {"canonical"}),
        _generated("hb4_mixed_s2_strict", 4, [1, 1, 1, 2], [4, 3], 1, h2),
        _generated("hb5_linear_s2", 4, [1] * 5, [4, 4], 1, h2),
        _generated("hb5_linear_s3", 4, [1] * 5, [5, 4, 4], 1, h2),
    ]
    return out


def complete_intersections() -> list[tuple[str, list[str], list[str]]]:
    return [
        ("ci_linear", ["x", "y", "z", "w"], ["x", "y"]),
        ("ci_mixed", ["x", "y", "z", "w"], ["x^2 + y*z", "y^3 - z*w^2", "x*w"]),
        ("ci_powers", ["x", "y", "z"], ["x^2", "y^3", "z^2"]),
    ]


def _entry_by_name(name):
    for e in build_corpus():
        if e.name == name:
            return e
    raise KeyError(name)


# -- summary run -------------------------------------------------------------

def run_corpus(budget: int = 12, field_override: int | None = None) -> dict:
    """Evaluate every acceptance-style check on the built-in corpus."""
    from .en import beta, en_regularity
    from .koszul import KoszulData, check_Gs, check_SCM, check_SD, check_SDC, classify_depth_Ztop
    from .oracle import quotient_agrees
    from .residual import build_residual, canonical_module_check, regularity_bound, shape_tables, beg_formula

    crit: dict = {}

    ok1 = all(beta(m, t) == 0 for m in range(1, 11) for t in range(m)) and all(
        beta(m, t) > 0 for m in range(1, 11) for t in range(m, 16)
    )
    crit["1_beta_table"] = {"pass": ok1}

    bad = []
    for r in range(1, 9):
        for g in range(1, r + 1):
            for s in range(g, 9):
                sh = shape_tables(r, g, s)
                for i in sh.beg:
                    if sh.beg[i] != beg_formula(r, g, s, i):
                        bad.append([r, g, s, i])
    crit["2_beg_D"] = {"pass": not bad, "mismatches": len(bad), "first": bad[:3]}

    entries = {}
    for e in build_corpus():
        R, I, a = e.ideals(field_override)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            data = build_residual(a, I)
        bound, actual, holds, tight = regularity_bound(data)
        rec = {"s": data.s, "g": data.g, "reg_bound": bound, "reg_actual": actual, "holds": holds, "tight": tight}
        if "height2" in e.tags:
            rep = en_regularity(I, a, budget)
            rec["en"] = {
                "case": rep.case,
                "cm_height_s": rep.cm_height_s,
                "s_minus_k_le_u": rep.s_minus_k_le_u,
                "prop_general": rep.predicted_general,
                "actual": rep.actual_mfr,
                "actual_en": rep.actual_en,
                "strict": rep.strict,
                "exact": rep.en_exact,
                "h0": rep.h0_matches,
                "consistent": rep.consistent,
            }
        if "canonical" in e.tags:
            c = canonical_module_check(data, budget)
            rec["canonical"] = {"status": c["status"], "match": c.get("match")}
        rows = quotient_agrees(R, a.generators, I.generators, data.J.generators, 6)
        rec["oracle_quotient"] = all(x["match"] for x in rows)
        entries[e.name] = rec

    link = entries["link_2x3"]
    crit["3_linkage_equality"] = {"pass": link["reg_bound"] == link["reg_actual"], "bound": link["reg_bound"], "actual": link["reg_actual"]}

    h2 = {n: v for n, v in entries.items() if "en" in v}
    c4 = {
        "a_cm": all(v["en"]["cm_height_s"] for v in h2.values()),
        "b_s_minus_k": all(v["en"]["s_minus_k_le_u"] for v in h2.values()),
        "c_prop": all(v["en"]["prop_general"] == v["en"]["actual"] for v in h2.values()),
        "d_strict": all(v["en"]["strict"] for v in h2.values() if v["en"]["strict"] is not None),
        "strict_instances": sum(1 for v in h2.values() if v["en"]["strict"] is not None),
        "instances": len(h2),
    }
    c4["pass"] = c4["a_cm"] and c4["b_s_minus_k"] and c4["c_prop"] and c4["d_strict"] and c4["strict_instances"] > 0 and len(h2) >= 6
    crit["4_height2"] = c4
    crit["5_en_exactness"] = {"pass": all(v["en"]["exact"] and v["en"]["h0"] for v in h2.values())}

    ci_ok = True
    for _, vs, gens in complete_intersections():
        R = create_ring(Field(field_override if field_override is not None else 32003), vs)
        K = KoszulData([R.parse(x) for x in gens])
        for k in (0, 1):
            for t in range(K.r + 1):
                ci_ok &= check_SD(K, k, t).passed and check_SDC(K, k, t).passed
        ci_ok &= all(check_Gs(K.ideal, s) for s in range(1, 7))
    gen = _entry_by_name("generic_2x3_s3")
    R, I, _ = gen.ideals(field_override)
    K = KoszulData(list(I.generators))
    scm = check_SCM(K)["pass"]
    ztop = classify_depth_Ztop(K)
    lnk = _entry_by_name("link_2x3")
    _, I3, _ = lnk.ideals(field_override)
    scm3 = check_SCM(KoszulData(list(I3.generators)))["pass"]
    crit["6_conditions"] = {
        "pass": bool(ci_ok and scm and scm3 and ztop["match"] and ztop["depth"] == R.nvars - 2 + 2),
        "ci": bool(ci_ok),
        "scm": bool(scm and scm3),
        "depth_Z_top": ztop["depth"],
    }

    can = {n: v["canonical"] for n, v in entries.items() if "canonical" in v}
    sg = [n for n, v in can.items() if v["match"] and entries[n]["s"] == entries[n]["g"]]
    sg1 = [n for n, v in can.items() if v["match"] and entries[n]["s"] == entries[n]["g"] + 1]
    crit["7_canonical"] = {"pass": bool(sg and sg1) and all(v["match"] for v in can.values()), "s_eq_g": sg, "s_eq_g_plus_1": sg1}
    crit["8_oracle_quotient"] = {"pass": all(v["oracle_quotient"] for v in entries.values())}

    return {
        "criteria": crit,
        "entries": entries,
        "all_pass": all(c["pass"] for c in crit.values()),
    }
