import json

import pytest

from homcat.combcat import FI, OI, FI_d, cyclic
from homcat.exactla import GF, QQ
from homcat.homology import NEG_INF
from homcat.repmod import Free, TorsionQuot, Truncate, evaluate, free_module, validate_module
from homcat.verify import (RECIPES, BoundConfigError, CasePlan, CorpusPlan, check_bound_suite, default_corpus,
                           fixed_example_expr, functor_defects, is_torsion, mutation_sensitivity,
                           oracle_crosscheck, random_module, run_case, run_corpus, window_stability)


@pytest.mark.parametrize("recipe", RECIPES)
def test_recipes_are_deterministic_and_functorial(recipe):
    a = random_module(CasePlan(FI(), 4, recipe=recipe, seed=3))
    b = random_module(CasePlan(FI(), 4, recipe=recipe, seed=3))
    assert a.fingerprint() == b.fingerprint()
    assert validate_module(a).ok


def test_torsion_recipe_is_torsion_and_nonzero():
    for seed in range(6):
        V = random_module(CasePlan(OI(), 4, recipe="torsion", seed=seed))
        assert is_torsion(V) and any(V.dims)


def test_unknown_recipe():
    with pytest.raises(ValueError):
        CasePlan(FI(), 3, recipe="nope")


def verdict_map(vs):
    return {(v.bound, v.s, v.note): v for v in vs}


def test_fixed_example_bound_values():
    plan = CasePlan(FI(), 6, 2, "fixed", 0, expr=fixed_example_expr(), case_id="ex")
    vs = check_bound_suite(plan)
    assert all(v.passed for v in vs)
    fi0 = [v for v in vs if v.bound == "fi_char0_hd"]
    assert [(v.s, v.lhs, v.rhs) for v in fi0] == [(1, 4, 4), (2, 5, 5)]
    lt = [v for v in vs if v.bound == "gd_lt_hd1"]
    assert len(lt) == 1 and lt[0].evaluated and (lt[0].lhs, lt[0].rhs) == (2, 4)


def test_torsion_atom_gives_equality():
    plan = CasePlan(FI(), 5, 3, "fixed", expr=TorsionQuot(Free(0), 0), case_id="atom", bounds=("torsion_hd",))
    vs = check_bound_suite(plan)
    assert [(v.lhs, v.rhs) for v in vs] == [(s, s) for s in range(4)]


def test_truncated_free_bound():
    plan = CasePlan(FI(), 5, 2, "fixed", expr=Truncate(Free(1), 2), case_id="t", bounds=("trunc_hd",))
    vs = check_bound_suite(plan)
    assert all(v.passed for v in vs) and [v.s for v in vs] == [1, 2]


@pytest.mark.parametrize("bounds, expr, cat", [
    (("torsion_hd",), Free(1), FI()),
    (("trunc_hd",), Free(1), FI()),
    (("fi_char0_hd",), Free(1), OI()),
    (("gd_lt_hd1",), Free(1), FI(cyclic(2))),
    (("no_such_bound",), Free(1), FI()),
])
def test_inapplicable_bounds_raise(bounds, expr, cat):
    plan = CasePlan(cat, 3, 1, "fixed", expr=expr, case_id="x", bounds=bounds)
    with pytest.raises(BoundConfigError):
        check_bound_suite(plan)


def test_crucial_shift_vacuous_is_not_evaluated():
    plan = CasePlan(FI(), 4, 1, "fixed", expr=fixed_example_expr(True), case_id="q", bounds=("crucial_shift",))
    vs = check_bound_suite(plan)
    assert vs and all(v.passed for v in vs)
    for v in vs:
        if not v.evaluated:
            assert v.lhs == v.rhs == NEG_INF and "vacuous" in v.note


def test_oracle_crosscheck_and_window_stability():
    e = fixed_example_expr(True)
    V = evaluate(e, FI(), QQ, 4)
    assert oracle_crosscheck(V, 2, e).ok
    assert window_stability(e, FI(), QQ, 4)[0]
    assert window_stability(TorsionQuot(Free(0), 1), FI(), GF(3), 3)[0]


def test_functor_defects_and_mutation_report():
    V = free_module(FI(), 1, 3)
    assert functor_defects(V) == []
    rep = mutation_sensitivity(V, seed=1, trials=4)
    assert rep.trials == 4 and rep.ok and rep.rejected + rep.still_functorial == 4


def test_corpus_plan_roundtrip():
    plan = default_corpus(seeds=1)
    back = CorpusPlan.from_json(json.loads(json.dumps(plan.to_json())))
    assert [c.case_id for c in back.cases] == [c.case_id for c in plan.cases]
    assert back.to_json() == plan.to_json()


def test_corpus_plan_field_and_errors():
    obj = {"cases": [{"category": "FI", "field": {"Fp": 3}, "window": 3, "recipe": "free"}]}
    plan = CorpusPlan.from_json(obj)
    assert plan.cases[0].field == GF(3)
    with pytest.raises(ValueError):
        CorpusPlan.from_json({"cases": [{"category": "FI", "field": "R", "window": 3}]})


def small_plan():
    cases = [CasePlan(FI(), 3, 2, "torsion", 0), CasePlan(OI(), 3, 2, "torsionless", 1),
             CasePlan(FI_d(2), 3, 1, "mixed", 2)]
    return CorpusPlan(cases)


def test_run_case_reports_everything():
    r = run_case(CasePlan(FI(), 3, 2, "torsion", 0))
    assert r.ok and r.oracle_ok and not r.error
    assert set(r.properties) == {"validate", "window_stability", "shift_dims", "truncate_dims", "mutation"}


def test_report_is_identical_across_worker_counts():
    one = run_corpus(small_plan(), workers=1)
    two = run_corpus(small_plan(), workers=2)
    assert one.ok and one.dumps() == two.dumps() and one.to_csv() == two.to_csv()
    assert one.to_csv().splitlines()[0] == "case,bound,s,fingerprint,lhs,rhs,pass,evaluated,note"
