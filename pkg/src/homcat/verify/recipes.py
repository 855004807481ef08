"""Seeded random module expressions and the case plans that carry them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from ..combcat import CategorySpec
from ..exactla import QQ, Field
from ..repmod import Free, Quot, SubSpan, Sum, TorsionQuot, Truncate, evaluate

RECIPES = ("free", "torsionless", "torsion", "mixed", "truncated")


@dataclass
class CasePlan:
    """One corpus case: a module (fixed expression or seeded recipe) and the bounds to check."""

    cat: CategorySpec
    window: int
    s_max: int = 3
    recipe: str = "torsionless"
    seed: int = 0
    field: Field = QQ
    bounds: tuple | None = None
    expr: object = None
    case_id: str = ""
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.expr is None and self.recipe not in RECIPES:
            raise ValueError(f"unknown recipe {self.recipe!r}; expected one of {', '.join(RECIPES)}")
        if not self.case_id:
            self.case_id = f"{self.cat.name}/{self.field}/N{self.window}/{self.recipe}/{self.seed:04d}"

    def rng(self) -> random.Random:
        return random.Random(f"{self.cat.name}|{self.field}|{self.window}|{self.recipe}|{self.seed}")

    def module_expr(self):
        if self.expr is not None:
            return self.expr
        if "_expr" not in self.meta:
            rng = self.rng()
            e = random_expr(rng, self.cat, self.window, self.recipe)
            # a torsion quotient can kill everything; redraw so the case is not vacuous
            for _ in range(16):
                if self.recipe != "torsion" or any(evaluate(e, self.cat, self.field, self.window).dims):
                    break
                e = random_expr(rng, self.cat, self.window, self.recipe)
            self.meta["_expr"] = e
        return self.meta["_expr"]


def _random_vector(rng: random.Random, n: int) -> tuple:
    while True:
        v = tuple(rng.choice((-1, 0, 0, 1, 1, 2)) for _ in range(n))
        if any(v):
            return v


def _top_generator(cat: CategorySpec, window: int) -> int:
    # keep free generators low so that covers stay small on the window
    return max(0, min(2, window - 2))


def _free_part(rng, cat, window):
    i = rng.randint(0, _top_generator(cat, window))
    kind = rng.choice(("free", "trunc", "span", "span"))
    if kind == "free":
        return Free(i)
    if kind == "trunc":
        return Truncate(Free(i), rng.randint(i + 1, min(i + 2, window)))
    j = rng.randint(i, min(i + 2, window))
    n = len(cat.hom_basis(i, j))
    return SubSpan(Free(i), ((j, _random_vector(rng, n)),))


def random_expr(rng: random.Random, cat: CategorySpec, window: int, recipe: str):
    """A module expression drawn from the recipe grammar.

    free: a single representable; truncated: τ_n of a representable;
    torsionless: sums of representables, their truncations and cyclic
    submodules; torsion: a torsion quotient of a torsionless expression;
    mixed: a cyclic quotient of a representable, possibly plus a torsionless part.
    """
    if recipe == "free":
        return Free(rng.randint(0, _top_generator(cat, window)))
    if recipe == "truncated":
        i = rng.randint(0, _top_generator(cat, window))
        return Truncate(Free(i), rng.randint(0, min(window, 5)))
    if recipe == "torsionless":
        parts = [_free_part(rng, cat, window) for _ in range(rng.choice((1, 1, 2)))]
        return parts[0] if len(parts) == 1 else Sum(tuple(parts))
    if recipe == "torsion":
        base = random_expr(rng, cat, window, "torsionless")
        return TorsionQuot(base, rng.randint(0, min(2, window - 1)))
    if recipe == "mixed":
        i = rng.randint(0, _top_generator(cat, window))
        j = rng.randint(i + 1, min(i + 2, window))
        n = len(cat.hom_basis(i, j))
        q = Quot(Free(i), SubSpan(Free(i), ((j, _random_vector(rng, n)),)))
        if rng.random() < 0.5:
            return q
        return Sum((q, _free_part(rng, cat, window)))
    raise ValueError(f"unknown recipe {recipe!r}")


def random_module(plan: CasePlan):
    """Evaluate the plan's module on its window (deterministic in the seed)."""
    return evaluate(plan.module_expr(), plan.cat, plan.field, plan.window)
