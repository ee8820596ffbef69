"""Command-line front end: job files, subcommands and JSON reports."""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
import warnings
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .engine import Budget, BudgetExceeded
from .groebner import GradedIdeal, ideal_quotient, set_budget
from .ring import ORDERS, Field, GradedRing, ParseError, RingError

COMMANDS = (
    "quotient",
    "betti",
    "koszul-depths",
    "check-conditions",
    "residual",
    "canonical-check",
    "en",
    "beta-table",
    "en-tables",
    "corpus",
)

EXIT_PARSE, EXIT_HYPOTHESIS, EXIT_BUDGET = 1, 2, 3


class JobError(ValueError):
    pass


class HypothesisFailure(Exception):
    def __init__(self, report: dict):
        super().__init__("hypothesis failure")
        self.report = report


@dataclass
class JobSpec:
    field: Field = dc_field(default_factory=Field.prime)
    variables: tuple = ()
    weights: tuple | None = None
    order: str = "degrevlex"
    ideals: dict = dc_field(default_factory=dict)  # name -> list of generator strings
    command: str | None = None
    budget: int | None = None
    source: str = ""

    def ring(self) -> GradedRing:
        return GradedRing(self.field, self.variables, self.weights, self.order)

    def ideal(self, ring: GradedRing, name: str) -> GradedIdeal:
        if name not in self.ideals:
            raise JobError(f"ideal {name!r} is not defined")
        return GradedIdeal(ring, [ring.parse(x) for x in self.ideals[name]])


def parse_field(text: str) -> Field:
    t = text.strip()
    if t == "Q":
        return Field(0)
    m = re.fullmatch(r"(?:Fp[\s:]*)?(\d+)", t)
    if not m:
        raise JobError(f"bad field {text!r}; expected 'Q' or 'Fp <prime>'")
    try:
        return Field(int(m.group(1)))
    except RingError as e:
        raise JobError(str(e)) from None


def _split_top(text: str) -> list[str]:
    parts = [p.strip() for p in text.split(",")]
    if any(not p for p in parts):
        raise JobError(f"empty entry in {text!r}")
    return parts


def parse_job(text: str) -> JobSpec:
    job = JobSpec(source=text)
    seen = set()
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        where = f"line {n}"
        if key in ("field", "ring", "order", "weights", "command", "budget") and key in seen:
            raise JobError(f"{where}: duplicate {key!r}")
        if key == "field":
            job.field = parse_field(rest)
        elif key == "ring":
            job.variables = tuple(_split_top(rest))
        elif key == "order":
            if rest not in ORDERS:
                raise JobError(f"{where}: unknown order {rest!r}")
            job.order = rest
        elif key == "weights":
            try:
                job.weights = tuple(int(x) for x in _split_top(rest))
            except ValueError:
                raise JobError(f"{where}: weights must be integers") from None
        elif key == "ideal":
            m = re.fullmatch(r"([A-Za-z_]\w*)\s*=\s*(.*)", rest)
            if not m:
                raise JobError(f"{where}: expected 'ideal NAME = f1, f2, ...'")
            name, body = m.groups()
            if name in job.ideals:
                raise JobError(f"{where}: ideal {name!r} defined twice")
            job.ideals[name] = _split_top(body) if body.strip() else []
        elif key == "command":
            if rest not in COMMANDS:
                raise JobError(f"{where}: unknown command {rest!r}")
            job.command = rest
        elif key == "budget":
            if not rest.isdigit():
                raise JobError(f"{where}: budget must be a nonnegative integer")
            job.budget = int(rest)
        else:
            raise JobError(f"{where}: unknown directive {key!r}")
        seen.add(key)
    if not job.variables:
        raise JobError("missing 'ring' line")
    return job


# -- JSON helpers --------------------------------------------------------------

def clean(obj):
    """Make a report JSON-safe and deterministic."""
    if isinstance(obj, dict):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    if isinstance(obj, (set, frozenset)):
        return sorted(clean(v) for v in obj)
    if hasattr(obj, "to_json"):
        return clean(obj.to_json())
    return obj


def dumps(obj) -> str:
    return json.dumps(clean(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- commands ------------------------------------------------------------------

def _gens(I: GradedIdeal):
    return [str(x) for x in I.generators]


def cmd_quotient(job, ring, opts):
    from .residual import ideal_hash

    I, a = job.ideal(ring, "I"), job.ideal(ring, "a")
    J = ideal_quotient(a, I)
    return {
        "command": "quotient",
        "J": _gens(J),
        "ideal_hashes": {"I": ideal_hash(I), "a": ideal_hash(a), "J": ideal_hash(J)},
        "hilbert_series": J.hilbert_series.to_json(),
        "dimension": J.dimension(),
        "height": J.height(),
    }


def cmd_betti(job, ring, opts):
    from .resolve import Presentation, betti_regularity_pd_depth

    I = job.ideal(ring, "I")
    M = Presentation.quotient_ring(I)
    B, reg, pd, dep = betti_regularity_pd_depth(M)
    dim = M.dimension()
    return {
        "command": "betti",
        "betti": B.to_json(),
        "table": B.staircase(),
        "regularity": reg,
        "pd": pd,
        "depth": dep,
        "dimension": dim,
        "cohen_macaulay": pd is None or dep == dim,
    }


def cmd_koszul_depths(job, ring, opts):
    from .koszul import KoszulData, check_tail_cycle_depths, classify_depth_Ztop

    I = job.ideal(ring, "I")
    K = KoszulData(list(I.generators))
    return {
        "command": "koszul-depths",
        "r": K.r,
        "d": K.d,
        "g": K.g,
        "cycles": {str(i): K.depth_of("Z", i) for i in range(K.r + 1)},
        "homology": {str(i): K.depth_of("H", i) for i in range(K.r + 1)},
        "Z_top": classify_depth_Ztop(K),
        "tail": check_tail_cycle_depths(K),
    }


def cmd_check_conditions(job, ring, opts):
    from .koszul import KoszulData, check_G_minus, check_Gs, check_SCM, check_SD, check_SDC, fitting_heights

    I = job.ideal(ring, "I")
    K = KoszulData(list(I.generators))
    level = K.r - K.g
    smax = K.r + 1
    return {
        "command": "check-conditions",
        "r": K.r,
        "g": K.g,
        "d": K.d,
        "SD": {str(k): check_SD(K, k, level) for k in (0, 1)},
        "SDC": {str(k): check_SDC(K, k, level) for k in (0, 1)},
        "SCM": check_SCM(K),
        "fitting_heights": fitting_heights(I, smax),
        "Gs": {str(s): check_Gs(I, s) for s in range(1, smax + 1)},
        "G_minus": {str(s): check_G_minus(I, s) for s in range(1, smax + 1)},
    }


def _residual(job, ring):
    from .residual import ResidualError, build_residual

    I, a = job.ideal(ring, "I"), job.ideal(ring, "a")
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            data = build_residual(a, I)
    except ResidualError as e:
        raise HypothesisFailure({"message": str(e)}) from None
    return data, [str(w.message) for w in caught]


def cmd_residual(job, ring, opts):
    from .residual import residual_report

    data, notes = _residual(job, ring)
    rep = {"command": "residual", "warnings": notes, **residual_report(data, opts.budget)}
    if not data.flags.get("is_residual"):
        raise HypothesisFailure(rep)
    return rep


def cmd_canonical_check(job, ring, opts):
    from .residual import canonical_module_check

    data, notes = _residual(job, ring)
    rep = {"command": "canonical-check", "warnings": notes, "s": data.s, "g": data.g}
    if data.trivial:
        rep["canonical"] = {"status": "inconclusive", "reason": "J = R"}
        raise HypothesisFailure(rep)
    rep["canonical"] = canonical_module_check(data, opts.budget)
    if rep["canonical"]["status"] != "compared":
        raise HypothesisFailure(rep)
    return rep


def cmd_en(job, ring, opts):
    from .en import HypothesisError, en_regularity

    I, a = job.ideal(ring, "I"), job.ideal(ring, "a")
    try:
        rep = en_regularity(I, a, opts.budget)
    except HypothesisError as e:
        raise HypothesisFailure({"command": "en", "failed_test": e.test, "message": str(e)}) from None
    return {"command": "en", **rep.to_json()}


def _beta_text(table: dict) -> str:
    tmax = len(next(iter(table.values()))) - 1
    cells = [[str(v) for v in row] for row in table.values()]
    width = max(len(c) for row in cells for c in row)
    width = max(width, len(str(tmax)))
    head = "m/t " + " ".join(str(t).rjust(width) for t in range(tmax + 1))
    lines = [head]
    for m, row in zip(table, cells):
        lines.append(f"{m:>3} " + " ".join(c.rjust(width) for c in row))
    return "\n".join(lines) + "\n"


def cmd_beta_table(job, ring, opts):
    from .en import beta_table

    if opts.m < 1 or opts.t < 0:
        raise JobError("need --m >= 1 and --t >= 0")
    table = beta_table(opts.m, opts.t)
    return {"command": "beta-table", "m": opts.m, "t": opts.t, "table": {str(k): v for k, v in table.items()}}, _beta_text(table)


def cmd_en_tables(job, ring, opts):
    from .en import alternating_sum, beta_table, en_counts, en_shape, hilbert_burch

    if job is not None:
        I, a = job.ideal(ring, "I"), job.ideal(ring, "a")
        hb = hilbert_burch(I)
        a_deg = [x.degree() for x in a.minimal_generators]
        sh = en_shape(hb.i, hb.b, a_deg)
        s, k, u = sh.s, sh.k, sh.u
        shape = sh.to_json()
    else:
        if None in (opts.s, opts.k, opts.u):
            raise JobError("en-tables needs a job file or all of --s --k --u")
        s, k, u = opts.s, opts.k, opts.u
        shape = None
    lo = max(k - 1, 0)
    n = {str(j): en_counts(s, k, u, j)[1] for j in range(lo, s)}
    alt = alternating_sum(s, k, u)
    m = max(s - k, 1)
    betas = beta_table(m, max(u - 1, m))[m]
    out = {
        "command": "en-tables",
        "s": s,
        "k": k,
        "u": u,
        "n": n,
        "alternating_sum": alt,
        "alternating_nonzero": alt != 0,
        "equality_regime": s - k <= u - 1,
        "beta_s_minus_k": betas,
        "shape": shape,
    }
    lines = [f"s={s} k={k} u={u}", " j   n(j)" + ("   f(j)" if shape else "")]
    for j in range(lo, s):
        f = f"   {shape['f'][str(j)]:>4}" if shape else ""
        lines.append(f"{j:>2} {n[str(j)]:>6}{f}")
    lines.append(f"alternating sum = {alt} ({'nonzero' if alt else 'zero'})")
    lines.append(f"beta_{m}(t), t=0..{len(betas) - 1}: " + " ".join(str(x) for x in betas))
    return out, "\n".join(lines) + "\n"


def cmd_corpus(job, ring, opts):
    from .corpus import build_corpus, run_corpus

    if opts.write_jobs:
        d = Path(opts.write_jobs)
        d.mkdir(parents=True, exist_ok=True)
        for e in build_corpus():
            (d / f"{e.name}.job").write_text(e.job_text())
    fld = None
    if opts.field is not None:
        fld = parse_field(opts.field).p
    return {"command": "corpus", **run_corpus(opts.budget, fld)}


HANDLERS = {
    "quotient": cmd_quotient,
    "betti": cmd_betti,
    "koszul-depths": cmd_koszul_depths,
    "check-conditions": cmd_check_conditions,
    "residual": cmd_residual,
    "canonical-check": cmd_canonical_check,
    "en": cmd_en,
    "beta-table": cmd_beta_table,
    "en-tables": cmd_en_tables,
    "corpus": cmd_corpus,
}
NEEDS_JOB = {"quotient", "betti", "koszul-depths", "check-conditions", "residual", "canonical-check", "en"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="resint", description="Residual intersection toolkit.")
    ap.add_argument("command", choices=COMMANDS + ("run",), help="subcommand, or 'run' to use the job's command line")
    ap.add_argument("jobfile", nargs="?", help="job file")
    ap.add_argument("--json", dest="json_out", metavar="PATH", help="also write the JSON report to PATH ('-' for stdout)")
    ap.add_argument("--field", help="override the field: Q or 'Fp <prime>'")
    ap.add_argument("--order", choices=ORDERS, help="override the monomial order")
    ap.add_argument("--budget", type=int, default=None, help="degree window for truncated comparisons (default 12)")
    ap.add_argument("--max-steps", type=int, default=None, help="reduction-step limit for Gröbner computations")
    ap.add_argument("--m", type=int, default=10, help="beta-table: largest m")
    ap.add_argument("--t", type=int, default=15, help="beta-table: largest t")
    ap.add_argument("--s", type=int, default=None)
    ap.add_argument("--k", type=int, default=None)
    ap.add_argument("--u", type=int, default=None)
    ap.add_argument("--write-jobs", metavar="DIR", help="corpus: also export the entries as job files")
    return ap


def _emit(report: dict, text: str | None, opts, out) -> None:
    body = dumps(report)
    if opts.json_out and opts.json_out != "-":
        Path(opts.json_out).write_text(body)
    out.write(text if text is not None and opts.json_out != "-" else body)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    opts = ap.parse_args(argv)
    report: dict = {}
    try:
        job = None
        ring = None
        command = opts.command
        if opts.jobfile:
            try:
                text = Path(opts.jobfile).read_text()
            except OSError as e:
                raise JobError(str(e)) from None
            job = parse_job(text)
            if command == "run":
                if not job.command:
                    raise JobError("job file has no 'command' line")
                command = job.command
            if opts.field is not None:
                job.field = parse_field(opts.field)
            if opts.order is not None:
                job.order = opts.order
            ring = job.ring()
        elif command == "run" or command in NEEDS_JOB:
            raise JobError(f"{command} needs a job file")
        if opts.budget is None:
            opts.budget = job.budget if job and job.budget is not None else 12
        if opts.max_steps is not None:
            set_budget(Budget(max_steps=opts.max_steps))
        try:
            res = HANDLERS[command](job, ring, opts)
        finally:
            set_budget(None)
        report, text = res if isinstance(res, tuple) else (res, None)
        _emit(report, text, opts, out)
        return 0
    except (JobError, ParseError, RingError) as e:
        _emit({"error": "parse", "message": str(e)}, None, opts, out)
        return EXIT_PARSE
    except HypothesisFailure as h:
        _emit({**h.report, "error": "hypothesis"}, None, opts, out)
        return EXIT_HYPOTHESIS
    except BudgetExceeded as b:
        _emit({"error": "budget", "message": str(b)}, None, opts, out)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
