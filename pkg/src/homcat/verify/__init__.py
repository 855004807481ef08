"""Bound verdicts, independent oracles and corpus runs."""

from .bounds import BOUND_IDS, BoundConfigError, Verdict, check_bound_suite, is_torsion, projective_quotient_certificate
from .corpus import CaseResult, CorpusPlan, CorpusReport, default_corpus, fixed_example_expr, run_case, run_corpus
from .oracle import (MutationReport, OracleVerdict, functor_defects, mutation_sensitivity, oracle_crosscheck,
                     window_stability)
from .recipes import RECIPES, CasePlan, random_expr, random_module

__all__ = [
    "BOUND_IDS", "BoundConfigError", "CasePlan", "CaseResult", "CorpusPlan", "CorpusReport", "MutationReport",
    "OracleVerdict", "RECIPES", "Verdict", "check_bound_suite", "default_corpus", "fixed_example_expr",
    "functor_defects", "is_torsion", "mutation_sensitivity", "oracle_crosscheck", "projective_quotient_certificate",
    "random_expr", "random_module", "run_case", "run_corpus", "window_stability",
]
