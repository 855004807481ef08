"""Acceptance criteria 1-9.  Each test records one pass/fail line in
``conftest.ACCEPTANCE``; the lines are printed at the end of the run.
All tolerances are exact (integer equality) unless a runtime cap is stated."""

import re
import time

import pytest

from homcat.combcat import FI, OI, VI, FI_d, FS_op, OI_d, OS_op, StarQuiver, cyclic
from homcat.exactla import QQ
from homcat.homology import NEG_INF, genetic_check, homology_dims, koszul_check
from homcat.repmod import Free, Shift, TorsionQuot, Truncate, evaluate, shift, truncate, validate_module
from homcat.verify import (CasePlan, check_bound_suite, default_corpus, fixed_example_expr, functor_defects,
                           random_module, run_corpus)

from conftest import ACCEPTANCE

RUNTIME_EXAMPLE_S = 10.0
RUNTIME_TORSION_SUITE_S = 300.0
TORSION_CATS = [(FI(), 5), (OI(), 5), (FI_d(2), 4), (OI_d(2), 4), (FI(cyclic(2)), 3)]


def record(n, ok, detail):
    ACCEPTANCE[n] = (bool(ok), detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def corpus():
    return run_corpus(default_corpus())


# -- 1 ----------------------------------------------------------------------


def test_criterion_1_worked_example():
    t0 = time.perf_counter()
    V = evaluate(fixed_example_expr(), FI(), QQ, 8)
    Vbar = evaluate(fixed_example_expr(quotient=True), FI(), QQ, 8)
    T, Tbar = homology_dims(V, 3), homology_dims(Vbar, 3)
    secs = time.perf_counter() - t0
    ok = (T.gd == 2 and T.hd[1] == 4 and Tbar.td == 2 and Tbar.hd[1] == 2
          and all(T.hd[s] <= s + 3 for s in (1, 2, 3)) and secs < RUNTIME_EXAMPLE_S)
    record(1, ok, f"gd(V)={T.gd} hd_1(V)={T.hd[1]} td(Vbar)={Tbar.td} hd_1(Vbar)={Tbar.hd[1]} "
                  f"hd(V)={T.hd} in {secs:.1f}s (cap {RUNTIME_EXAMPLE_S:.0f}s)")
    assert ok


# -- 2 ----------------------------------------------------------------------


def test_criterion_2_torsion_bound_suite():
    t0 = time.perf_counter()
    total = violations = equalities = 0
    for cat, N in TORSION_CATS:
        for seed in range(20):
            plan = CasePlan(cat, N, 3, "torsion", seed, bounds=("torsion_hd",))
            V = random_module(plan)
            assert any(V.dims)
            vs = check_bound_suite(plan, V)
            total += 1
            violations += sum(not v.passed for v in vs)
            equalities += sum(v.lhs == v.rhs and v.lhs != NEG_INF for v in vs)
    atom = CasePlan(FI(), 5, 3, "fixed", expr=TorsionQuot(Free(0), 0), case_id="atom", bounds=("torsion_hd",))
    witness = [(v.lhs, v.rhs) for v in check_bound_suite(atom)]
    secs = time.perf_counter() - t0
    ok = (violations == 0 and witness == [(s, s) for s in range(4)] and secs < RUNTIME_TORSION_SUITE_S)
    record(2, ok, f"{total} torsion modules, {violations} violations, {equalities} equality verdicts, "
                  f"atom hd_s=s for s<=3: {witness == [(s, s) for s in range(4)]}, "
                  f"{secs:.1f}s (cap {RUNTIME_TORSION_SUITE_S:.0f}s)")
    assert ok


# -- 3 ----------------------------------------------------------------------


def test_criterion_3_koszul_atoms():
    bad = []
    for cat in (FI(), OI(), FI_d(2)):
        for i in range(4):
            V = evaluate(TorsionQuot(Free(i), i), cat, QQ, i + 3)
            T = homology_dims(V, 3)
            for s in range(4):
                if T.support(s) != [i + s]:
                    bad.append((cat.name, i, s, T.support(s)))
    record(3, not bad, "supp H_s(C(i,i)) = {i+s} for FI, OI, FI_2, i<=3, s<=3" if not bad else f"mismatches {bad}")
    assert not bad


# -- 4 ----------------------------------------------------------------------


def koszul_family():
    """Koszul modules on the corpus categories and windows: representables,
    torsion atoms and the shifted quotient P/J^2 P."""
    out = []
    for cat, N in TORSION_CATS[:4]:
        for i in range(2):
            out.append((cat, N, Free(i), i))
            out.append((cat, N, TorsionQuot(Free(i), i), i))
        out.append((cat, N, Shift(TorsionQuot(Free(0), 1), 1), 0))
    return out


def test_criterion_4_koszul_truncation_pair():
    P2 = evaluate(TorsionQuot(Free(0), 1), FI(), QQ, 5)
    pair_ok = (not koszul_check(P2, 0, 3).ok) and koszul_check(shift(P2, 1), 0, 3).ok
    checked, failed = 0, []
    for cat, N, e, d in koszul_family():
        V = evaluate(e, cat, QQ, N)
        assert koszul_check(V, d, 3).ok, (cat.name, e)
        for n in range(d, N):
            W = truncate(V, n)
            if not any(W.dims):
                continue
            checked += 1
            if not koszul_check(W, n, 3).ok:
                failed.append((cat.name, e, n))
    ok = pair_ok and not failed and checked > 0
    record(4, ok, f"P/J^2P fails and S(P/J^2P) passes: {pair_ok}; {checked} truncations of Koszul modules, "
                  f"{len(failed)} failures")
    assert ok


# -- 5 ----------------------------------------------------------------------


def test_criterion_5_truncated_free_bound():
    N = 8
    worst, viol = [], []
    for i in range(3):
        for n in range(6):
            plan = CasePlan(FI(), N, 3, "fixed", expr=Truncate(Free(i), n), case_id=f"tau{n}P{i}",
                            bounds=("trunc_hd",))
            for v in check_bound_suite(plan):
                if not v.passed:
                    viol.append((i, n, v.s, v.lhs, v.rhs))
                worst.append(v.rhs - v.lhs if v.lhs != NEG_INF else None)
    slack = min(w for w in worst if w is not None)
    record(5, not viol, f"hd_s(tau_n P) <= n+s for P in Free(0..2), n<=5, s=1..3 on window {N}: "
                        f"{len(worst)} verdicts, {len(viol)} violations, minimum slack {slack}")
    assert not viol


# -- 6 ----------------------------------------------------------------------


def test_criterion_6_fi_char0_bound(corpus):
    fi_cases = [r for r in corpus.results if r.case_id.startswith("FI/Q/")]
    char0 = [v for r in fi_cases for v in r.verdicts if v.bound == "fi_char0_hd"]
    strict = [v for r in fi_cases for v in r.verdicts if v.bound == "gd_lt_hd1" and v.evaluated]
    plan = CasePlan(FI(), 8, 3, "fixed", expr=fixed_example_expr(), case_id="example-N8",
                    bounds=("fi_char0_hd", "gd_lt_hd1"))
    ex = check_bound_suite(plan)
    ex_strict = [v for v in ex if v.bound == "gd_lt_hd1"]
    ok = (len(fi_cases) >= 20 and char0 and all(v.passed for v in char0) and all(v.passed for v in strict)
          and all(v.passed for v in ex) and len(ex_strict) == 1 and ex_strict[0].evaluated
          and (ex_strict[0].lhs, ex_strict[0].rhs) == (2, 4))
    record(6, ok, f"{len(fi_cases)} FI modules, {len(char0)} bound verdicts all pass: "
                  f"{all(v.passed for v in char0)}; gd<hd_1 certified on {len(strict)} corpus cases, all strict: "
                  f"{all(v.passed for v in strict)}; example V: {ex_strict[0].lhs} < {ex_strict[0].rhs}")
    assert ok


# -- 7 ----------------------------------------------------------------------


def test_criterion_7_genetic():
    cats = [FI(), OI(), FI(cyclic(2)), FI(cyclic(3)), FI_d(1), FI_d(2), OI_d(1), OI_d(2), FS_op(), OS_op()]
    bad = [(c.name, s) for c in cats for s in range(4) if not genetic_check(c, s, 7).ok]
    bad += [("VI_2", s) for s in range(3) if not genetic_check(VI(2), s, 3).ok]
    star_fails = not genetic_check(StarQuiver(), 0, 2).ok
    ok = not bad and star_fails
    record(7, ok, f"{len(cats)} categories at window 7 and VI(2) at window 3 pass: {not bad}; star fixture fails: "
                  f"{star_fails}")
    assert ok


# -- 8 ----------------------------------------------------------------------


def test_criterion_8_oracle_equivalence(corpus):
    bad = [(r.case_id, r.oracle_message or r.error) for r in corpus.results if r.oracle_ok is not True]
    record(8, not bad, f"{len(corpus.results)} corpus modules, default/redundant GENERIC/window N+1 tables agree "
                       f"on {len(corpus.results) - len(bad)}")
    assert not bad, bad[:5]


# -- 9 ----------------------------------------------------------------------

STRUCTURAL = ("validate", "window_stability", "shift_dims", "truncate_dims")
INEQUALITIES = ("td_ses", "gd_ses", "gd_shift", "hd_shift", "crucial_shift")
MUTATION = re.compile(r"(\d+) of (\d+) corruptions rejected, (\d+) still functorial")


def mutation_counts(corpus):
    rejected = trials = still = 0
    agree = True
    for r in corpus.results:
        ok, detail = r.properties["mutation"]
        m = MUTATION.search(detail)
        rejected += int(m.group(1))
        trials += int(m.group(2))
        still += int(m.group(3))
        agree &= ok
    return rejected, trials, still, agree


def test_criterion_9_property_suite(corpus):
    errors = [r.case_id for r in corpus.results if r.error]
    structural = [(r.case_id, k) for r in corpus.results for k in STRUCTURAL if not r.properties[k][0]]
    ineq = [v for v in corpus.verdicts if v.bound in INEQUALITIES]
    ineq_bad = [(v.case_id, v.bound, v.s) for v in ineq if not v.passed]
    rejected, trials, still, agree = mutation_counts(corpus)
    literal = still == 0
    green = not errors and not structural and not ineq_bad and agree
    record(9, green and literal,
           f"structural properties and {len(ineq)} inequality verdicts green: {green}; "
           f"mutation: {rejected} of {trials} single-entry corruptions rejected, {still} still define a functor "
           f"(validator agrees with the independent functoriality oracle on all: {agree}); "
           f"'every corruption is rejected' is unattainable, see notes/decisions.md")
    assert green, (errors[:3], structural[:3], ineq_bad[:3])


@pytest.mark.xfail(strict=True, reason="some single-entry corruptions of corpus modules are still functors; "
                                        "a correct validator must accept them")
def test_criterion_9_literal_mutation_rejection(corpus):
    rejected, trials, still, _ = mutation_counts(corpus)
    assert still == 0


def test_still_functorial_corruption_exists():
    """A concrete corpus-style module and entry whose corruption is again a module."""
    V = evaluate(TorsionQuot(Free(0), 1), FI(), QQ, 3)
    step = FI().hom_basis(0, 1)[0]
    W = V.perturbed(step, 0, 0, 1)
    assert W.act(step) != V.act(step)
    assert validate_module(W).ok and functor_defects(W) == []
