"""Independent cross-checks: resolution independence, window stability, mutation sensitivity."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from ..homology import GENERIC, homology_dims, torsion_part_dims
from ..repmod import evaluate, restrict, validate_module


@dataclass
class OracleVerdict:
    ok: bool
    tables: dict
    message: str = ""

    def to_json(self) -> dict:
        return {"ok": self.ok, "message": self.message,
                "tables": {k: [list(r) for r in v] for k, v in self.tables.items()}}


def oracle_crosscheck(V, s_max: int, expr=None, primary=None) -> OracleVerdict:
    """Homology three ways: the default resolution, a GENERIC one with every
    first-step generator duplicated, and the default one on window N+1 cut back to N."""
    expr = expr if expr is not None else V.expr
    if expr is None:
        raise ValueError("oracle_crosscheck needs a module expression to rebuild the module on window N+1")
    N = V.window
    a = primary or homology_dims(V, s_max)
    b = homology_dims(V, s_max, mode=GENERIC, redundancy=2)
    wide = evaluate(expr, V.cat, V.field, N + 1)
    c = homology_dims(wide, s_max)
    tables = {"default": a.dims, "generic_redundant": b.dims, "window_plus_one": [r[: N + 1] for r in c.dims]}
    msgs = []
    if list(a.dims) != list(b.dims):
        msgs.append("default and redundant GENERIC tables differ")
    if list(a.dims) != tables["window_plus_one"]:
        msgs.append("window N and window N+1 tables differ")
    ta, tc = torsion_part_dims(V)[:N], torsion_part_dims(wide)[:N]
    if ta != tc:
        msgs.append(f"J-annihilated dims differ below N: {ta} vs {tc}")
    return OracleVerdict(not msgs, tables, "; ".join(msgs))


def window_stability(expr, cat, field, N: int) -> tuple[bool, str]:
    """The expression on window N equals its window-(N+1) evaluation restricted to N."""
    A = evaluate(expr, cat, field, N)
    B = restrict(evaluate(expr, cat, field, N + 1), N)
    if A.dims != B.dims:
        return False, f"dims {A.dims} vs {B.dims}"
    for g, m in A.generator_actions().items():
        if B.act(g) != m:
            return False, f"action of {g} differs"
    return True, ""


def functor_defects(V, limit: int = 1) -> list:
    """Direct audit: act(g∘φ) = act(g)·act(φ) for every morphism φ and generator g.

    Written independently of validate_module (which explores factorizations
    breadth-first); used to decide whether corrupted data is still a functor.
    """
    cat, N = V.cat, V.window
    out = []
    for i in range(N + 1):
        if V.dims[i] == 0:
            continue
        for j in range(i, N + 1):
            for phi in cat.hom_basis(i, j):
                A = V.act(phi)
                for g in cat.generators_from(j, N):
                    if V.act(cat.compose(g, phi)) != V.act(g) @ A:
                        out.append((phi, g))
                        if len(out) >= limit:
                            return out
    return out


@dataclass
class MutationReport:
    trials: int
    agree: int
    rejected: int
    still_functorial: int
    disagreements: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.agree == self.trials

    def to_json(self) -> dict:
        return {"trials": self.trials, "agree": self.agree, "rejected": self.rejected,
                "still_functorial": self.still_functorial, "ok": self.ok,
                "disagreements": [str(d) for d in self.disagreements]}


def mutation_sensitivity(V, seed: int = 0, trials: int = 3) -> MutationReport:
    """Corrupt one generator-matrix entry at a time; validate_module must reject
    exactly the corruptions that break functoriality."""
    rng = random.Random(f"mutate|{V.fingerprint()}|{seed}")
    gens = [g for g, m in sorted(V.generator_actions().items()) if m.rows and m.cols]
    agree = rejected = functorial = 0
    bad = []
    done = 0
    for _ in range(trials if gens else 0):
        g = rng.choice(gens)
        m = V.generator_actions()[g]
        r, c = rng.randrange(m.rows), rng.randrange(m.cols)
        W = V.perturbed(g, r, c, 1)
        v = validate_module(W)
        truth = not functor_defects(W)
        done += 1
        rejected += not v.ok
        functorial += truth
        if v.ok == truth:
            agree += 1
        else:
            bad.append((g, r, c, v.ok, truth))
    return MutationReport(done, agree, rejected, functorial, bad)
