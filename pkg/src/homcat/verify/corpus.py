"""Corpus runs: many seeded cases, every bound checked, results in canonical order."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from ..combcat import FI, OI, FI_d, OI_d, category_from_json, cyclic
from ..exactla import GF, QQ
from ..repmod import Free, Quot, SubSpan, expr_from_json, expr_to_json, shift, truncate, validate_module
from .bounds import Verdict, _Cache, _random_ses, check_bound_suite
from .oracle import mutation_sensitivity, oracle_crosscheck, window_stability
from .recipes import CasePlan, random_module

DEFAULT_WINDOWS = {"FI": 5, "OI": 5, "FI_2": 4, "OI_2": 4, "FI_G[cyclic:2]": 3}


@dataclass
class CorpusPlan:
    cases: list
    oracle: bool = True
    properties: bool = True

    def to_json(self) -> dict:
        return {"oracle": self.oracle, "properties": self.properties, "cases": [_case_json(c) for c in self.cases]}

    @classmethod
    def from_json(cls, obj: dict) -> "CorpusPlan":
        cases = []
        for k, c in enumerate(obj["cases"]):
            path = f"cases[{k}]"
            cat = category_from_json(c["category"])
            expr = expr_from_json(c["module"], cat, path + ".module") if "module" in c else None
            cases.append(CasePlan(cat, int(c["window"]), int(c.get("s_max", 3)), c.get("recipe", "torsionless"),
                                  int(c.get("seed", 0)), _field(c.get("field", "Q")),
                                  tuple(c["bounds"]) if c.get("bounds") else None, expr, c.get("id", "")))
        return cls(cases, bool(obj.get("oracle", True)), bool(obj.get("properties", True)))


def _field(obj):
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and "Fp" in obj:
        return GF(int(obj["Fp"]))
    raise ValueError(f"unknown field {obj!r}")


def _case_json(c: CasePlan) -> dict:
    out = {"id": c.case_id, "category": c.cat.to_json(), "field": c.field.to_json(), "window": c.window,
           "s_max": c.s_max, "recipe": c.recipe, "seed": c.seed}
    if c.expr is not None:
        out["module"] = expr_to_json(c.expr)
    if c.bounds:
        out["bounds"] = list(c.bounds)
    return out


def fixed_example_expr(quotient: bool = False):
    """The FI-submodule of C(1,-) generated by the sum of the two injections [1] → [2],
    or with ``quotient`` set, C(1,-) modulo that submodule."""
    sub = SubSpan(Free(1), ((2, (1, 1)),))
    return Quot(Free(1), sub) if quotient else sub


def default_corpus(seeds: int = 20, windows: dict | None = None, s_max: int = 3) -> CorpusPlan:
    windows = {**DEFAULT_WINDOWS, **(windows or {})}
    cats = [FI(), OI(), FI_d(2), OI_d(2), FI(cyclic(2))]
    cases = []
    for cat in cats:
        N = windows[cat.name]
        recipes = ("torsion", "torsionless", "mixed") if cat.name == "FI" else ("torsion", "torsionless")
        for recipe in recipes:
            for seed in range(seeds):
                cases.append(CasePlan(cat, N, s_max, recipe, seed))
    cases.append(CasePlan(FI(), 5, s_max, "fixed", 0, expr=fixed_example_expr(), case_id="FI/Q/N5/fixed/example-sub"))
    cases.append(CasePlan(FI(), 5, s_max, "fixed", 0, expr=fixed_example_expr(True),
                          case_id="FI/Q/N5/fixed/example-quot"))
    return CorpusPlan(cases)


@dataclass
class CaseResult:
    case_id: str
    fingerprint: str
    dims: list
    verdicts: list
    oracle_ok: bool | None
    oracle_message: str
    seconds: float
    error: str = ""
    properties: dict = dc_field(default_factory=dict)   # name -> (ok, detail)

    @property
    def ok(self) -> bool:
        return (not self.error and all(v.passed for v in self.verdicts) and self.oracle_ok is not False
                and all(ok for ok, _ in self.properties.values()))


def _exact_dims(U, V, W) -> bool:
    return all(u + w == v for u, v, w in zip(U.dims, V.dims, W.dims))


def property_checks(plan: CasePlan, V, mutation_trials: int = 2) -> dict:
    """Structural facts checked on every corpus module.

    validate: the module is a functor; window: evaluating on N+1 and restricting
    gives the same module; shift/truncate: both functors are exact on the
    seeded short exact sequence and move dimensions as expected; mutation:
    validate_module rejects exactly the non-functorial single-entry corruptions.
    """
    out = {}
    v = validate_module(V)
    out["validate"] = (v.ok, v.message)
    ok, msg = window_stability(plan.module_expr(), plan.cat, plan.field, plan.window)
    out["window_stability"] = (ok, msg)
    U, W = _random_ses(plan, V)
    N = V.window
    rng = plan.rng()
    a = rng.randint(1, max(1, min(2, N)))
    n = rng.randint(0, N)
    SV = shift(V, a)
    ok = tuple(SV.dims) == tuple(V.dims[a:])
    out["shift_dims"] = (ok and _exact_dims(shift(U, a), SV, shift(W, a)), f"a={a}")
    TV = truncate(V, n)
    ok = TV.dims == tuple(0 if j < n else d for j, d in enumerate(V.dims))
    out["truncate_dims"] = (ok and _exact_dims(truncate(U, n), TV, truncate(W, n)), f"n={n}")
    m = mutation_sensitivity(V, seed=plan.seed, trials=mutation_trials)
    out["mutation"] = (m.ok, f"{m.rejected} of {m.trials} corruptions rejected, "
                             f"{m.still_functorial} still functorial")
    return out


def run_case(plan: CasePlan, oracle: bool = True, properties: bool = True) -> CaseResult:
    t0 = time.perf_counter()
    try:
        V = random_module(plan)
        cache = _Cache(plan.s_max)
        verdicts = check_bound_suite(plan, V, tables=cache)
        ok, msg = None, ""
        if oracle:
            o = oracle_crosscheck(V, plan.s_max, plan.module_expr(), primary=cache.table(V))
            ok, msg = o.ok, o.message
        props = property_checks(plan, V) if properties else {}
        return CaseResult(plan.case_id, V.fingerprint(), list(V.dims), verdicts, ok, msg,
                          time.perf_counter() - t0, properties=props)
    except Exception as exc:  # reported per case so one bad case does not sink the run
        return CaseResult(plan.case_id, "", [], [], None, "", time.perf_counter() - t0,
                          f"{type(exc).__name__}: {exc}")


def _run_one(args):
    return run_case(*args)


@dataclass
class CorpusReport:
    results: list
    seconds: float = 0.0
    meta: dict = dc_field(default_factory=dict)

    @property
    def verdicts(self) -> list[Verdict]:
        return sorted((v for r in self.results for v in r.verdicts), key=Verdict.sort_key)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if not r.ok]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "cases": [{"id": r.case_id, "fingerprint": r.fingerprint, "dims": r.dims, "ok": r.ok,
                       "oracle": r.oracle_ok, "oracle_message": r.oracle_message, "error": r.error,
                       "properties": {k: {"ok": ok, "detail": d} for k, (ok, d) in sorted(r.properties.items())}}
                      for r in self.results],
            "verdicts": [v.to_json() for v in self.verdicts],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=Verdict.CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for v in self.verdicts:
            w.writerow(v.to_json())
        return buf.getvalue()


def run_corpus(plan: CorpusPlan, workers: int = 1, progress=None) -> CorpusReport:
    """Run every case; the report is sorted by case id whatever the worker count."""
    t0 = time.perf_counter()
    jobs = [(c, plan.oracle, plan.properties) for c in plan.cases]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_run_one, jobs))
    else:
        results = []
        for j in jobs:
            r = _run_one(j)
            if progress:
                progress(r)
            results.append(r)
    results.sort(key=lambda r: r.case_id)
    return CorpusReport(results, time.perf_counter() - t0)

