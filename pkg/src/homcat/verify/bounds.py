"""The degree inequalities, instantiated as pass/fail verdicts on concrete modules."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..combcat import FI_G
from ..homology import (NEG_INF, degree_json, h0_dims, homology_dims, top_degree, torsion_degree)
from ..homology.engine import Stage
from ..repmod import Free, Sum, Truncate, quotient, shift, submodule_span
from .recipes import CasePlan, random_module

BOUND_IDS = (
    "td_ses",         # td(U) <= td(V) <= max(td(U), td(W)) for 0 -> U -> V -> W -> 0
    "gd_ses",         # gd(W) <= gd(V) <= max(gd(U), gd(W))
    "gd_shift",       # gd(S V) <= gd(V) <= gd(S V) + 1
    "hd_shift",       # hd_s(V) <= max(hd_{-1}+1, ..., hd_{s-1}(V)+1, hd_s(S V)+1), hd_{-1} = 0
    "crucial_shift",  # hd_s(S_a V) <= hd_0(S_a V)+s for all s  =>  hd_s(V) <= hd_0(V)+s+a
    "torsion_hd",     # hd_s(V) <= td(V) + s for torsion V
    "trunc_hd",       # hd_s(τ_n P) <= n + s for s >= 1
    "fi_char0_hd",    # FI over Q: hd_s(V) <= max(td, 2gd-1) + s for s >= 1
    "gd_lt_hd1",      # FI over Q, torsionless, V/<V_{<gd}> not projective: gd < hd_1
)


class BoundConfigError(ValueError):
    """A bound was requested for a module or category it does not apply to."""


@dataclass
class Verdict:
    case_id: str
    bound: str
    s: int | None
    fingerprint: str
    lhs: int | float
    rhs: int | float
    passed: bool
    note: str = ""
    evaluated: bool = True

    def sort_key(self):
        return (self.case_id, self.bound, -1 if self.s is None else self.s, self.note)

    def to_json(self) -> dict:
        return {"case": self.case_id, "bound": self.bound, "s": self.s, "fingerprint": self.fingerprint,
                "lhs": degree_json(self.lhs), "rhs": degree_json(self.rhs), "pass": self.passed,
                "evaluated": self.evaluated, "note": self.note}

    CSV_FIELDS = ("case", "bound", "s", "fingerprint", "lhs", "rhs", "pass", "evaluated", "note")


def _le(a, b) -> bool:
    return a == NEG_INF or a <= b


def is_fi_char0(cat, field) -> bool:
    return isinstance(cat, FI_G) and not cat.ordered and cat.group.is_trivial() and field.char == 0


def is_torsion(V) -> bool:
    """Windowed: V_N = 0 and generated below N forces V_j = 0 for all j >= N."""
    return V.dims[-1] == 0


def _is_truncated_free(expr):
    if isinstance(expr, Truncate):
        inner = expr.of
        if isinstance(inner, Free):
            return True
        return isinstance(inner, Sum) and all(isinstance(p, Free) for p in inner.parts)
    return False


def default_bounds(plan: CasePlan, V) -> tuple:
    out = ["td_ses", "gd_ses", "gd_shift", "hd_shift", "crucial_shift"]
    if is_torsion(V):
        out.append("torsion_hd")
    if _is_truncated_free(plan.module_expr()):
        out.append("trunc_hd")
    if is_fi_char0(plan.cat, plan.field):
        out.append("fi_char0_hd")
        out.append("gd_lt_hd1")
    return tuple(out)


def gd_of(V) -> int | float:
    return top_degree(h0_dims(Stage.whole(V)))


def projective_quotient_certificate(V, gd) -> str:
    """Why V'' = V / <V_j : j < gd> is not projective on the window, or '' if no witness.

    V'' is generated in the single degree gd, so it is projective exactly when
    its dimensions match C ⊗ H_0(V)_gd.
    """
    if gd == NEG_INF:
        return ""
    cat = V.cat
    gens = [(j, tuple(1 if r == c else 0 for r in range(V.dims[j])))
            for j in range(gd) for c in range(V.dims[j])]
    sub = submodule_span(V, gens)
    Vpp = quotient(V, sub).module
    w = Vpp.dims[gd]
    for j in range(gd, V.window + 1):
        expect = w * len(cat.hom_basis(gd, j)) // cat.group_order(gd)
        if Vpp.dims[j] != expect:
            return f"dim V''_{j} = {Vpp.dims[j]} but the free module on H_0 has {expect}"
    return ""


class _Cache:
    def __init__(self, s_max):
        self.s_max = s_max
        self.tables = {}

    def table(self, V):
        key = id(V)
        if key not in self.tables:
            self.tables[key] = (V, homology_dims(V, self.s_max))
        return self.tables[key][1]


def check_bound_suite(plan: CasePlan, V=None, bounds=None, tables: _Cache | None = None) -> list[Verdict]:
    """One verdict per (bound, s); raise BoundConfigError for inapplicable requests."""
    V = V if V is not None else random_module(plan)
    requested = tuple(bounds or plan.bounds or default_bounds(plan, V))
    for b in requested:
        if b not in BOUND_IDS:
            raise BoundConfigError(f"unknown bound {b!r}")
    cache = tables or _Cache(plan.s_max)
    fp = V.fingerprint()
    cid = plan.case_id
    s_max = plan.s_max
    N = V.window
    out: list[Verdict] = []

    def add(bound, s, lhs, rhs, note="", evaluated=True, passed=None):
        ok = _le(lhs, rhs) if passed is None else passed
        out.append(Verdict(cid, bound, s, fp, lhs, rhs, ok, note, evaluated))

    T = cache.table(V)
    hd, td, gd = T.hd, T.td, T.gd

    if "td_ses" in requested or "gd_ses" in requested:
        U, W = _random_ses(plan, V)
        if "td_ses" in requested:
            tU, tW = torsion_degree(U), torsion_degree(W)
            note = f"objects <= {N - 1}"
            add("td_ses", None, tU, td, "td(U) <= td(V); " + note)
            add("td_ses", None, td, max(tU, tW), "td(V) <= max(td(U), td(W)); " + note)
        if "gd_ses" in requested:
            gU, gW = gd_of(U), gd_of(W)
            note = f"objects <= {N}"
            add("gd_ses", None, gW, gd, "gd(W) <= gd(V); " + note)
            add("gd_ses", None, gd, max(gU, gW), "gd(V) <= max(gd(U), gd(W)); " + note)

    needs_shift = {"gd_shift", "hd_shift", "crucial_shift"} & set(requested)
    if needs_shift and N < 1:
        raise BoundConfigError("shift bounds need window >= 1")
    S1 = shift(V, 1) if needs_shift else None
    if "gd_shift" in requested:
        gS = gd_of(S1)
        add("gd_shift", None, gS, gd, f"gd(S V) <= gd(V); S V on objects <= {N - 1}")
        # with S V = 0 the module lives at object 0 only, so gd(V) <= 0
        add("gd_shift", None, gd, max(gS + 1, 0), "gd(V) <= gd(S V) + 1")
    if "hd_shift" in requested:
        TS = cache.table(S1)
        for s in range(s_max + 1):
            rhs = max([1] + [hd[i] + 1 for i in range(s)] + [TS.hd[s] + 1])
            add("hd_shift", s, hd[s], rhs, f"hd_-1 = 0; S V on objects <= {N - 1}")
    if "crucial_shift" in requested:
        for a in range(1, min(3, N) + 1):
            Sa = S1 if a == 1 else shift(V, a)
            TA = cache.table(Sa)
            hyp = all(_le(TA.hd[s], TA.hd[0] + s) for s in range(s_max + 1))
            if not hyp:
                add("crucial_shift", None, NEG_INF, NEG_INF, f"a={a}: hypothesis fails, implication vacuous",
                    evaluated=False, passed=True)
                continue
            for s in range(s_max + 1):
                add("crucial_shift", s, hd[s], hd[0] + s + a, f"a={a}: hypothesis certified for s <= {s_max}")
    if "torsion_hd" in requested:
        if not is_torsion(V):
            raise BoundConfigError(f"{cid}: torsion_hd needs a torsion module (V_N = {V.dims[-1]})")
        for s in range(s_max + 1):
            add("torsion_hd", s, hd[s], td + s, f"td on objects <= {N - 1}")
    if "trunc_hd" in requested:
        e = plan.module_expr()
        if not _is_truncated_free(e):
            raise BoundConfigError(f"{cid}: trunc_hd needs a truncated free module")
        for s in range(1, s_max + 1):
            add("trunc_hd", s, hd[s], e.n + s, f"n = {e.n}")
    if "fi_char0_hd" in requested:
        if not is_fi_char0(plan.cat, plan.field):
            raise BoundConfigError(f"{cid}: fi_char0_hd applies to FI over Q only")
        base = max(td, 2 * gd - 1)
        for s in range(1, s_max + 1):
            add("fi_char0_hd", s, hd[s], base + s, f"td={degree_json(td)}, gd={degree_json(gd)}")
    if "gd_lt_hd1" in requested:
        if not is_fi_char0(plan.cat, plan.field):
            raise BoundConfigError(f"{cid}: gd_lt_hd1 applies to FI over Q only")
        if td != NEG_INF:
            add("gd_lt_hd1", 1, gd, hd[1], "not torsionless on the window", evaluated=False, passed=True)
        else:
            cert = projective_quotient_certificate(V, gd)
            if not cert:
                add("gd_lt_hd1", 1, gd, hd[1], "no witness that V'' is not projective", evaluated=False,
                    passed=True)
            else:
                add("gd_lt_hd1", 1, gd, hd[1], cert, passed=(gd != NEG_INF and gd < hd[1]))
    return out


def _random_ses(plan: CasePlan, V):
    """0 -> U -> V -> W -> 0 with U spanned by one seeded random vector."""
    rng = random.Random(f"ses|{plan.case_id}|{plan.seed}")
    support = [j for j, d in enumerate(V.dims) if d]
    if not support:
        sub = submodule_span(V, [])
    else:
        j = rng.choice(support)
        v = [0] * V.dims[j]
        while not any(v):
            v = [rng.choice((-1, 0, 1, 2)) for _ in range(V.dims[j])]
        sub = submodule_span(V, [(j, tuple(v))])
    return sub.module, quotient(V, sub).module
