"""Combinatorial categories: hom-set enumeration, composition and the self-embedding."""

from __future__ import annotations

from .categories import (
    FI,
    OI,
    VI,
    BudgetError,
    CategorySpec,
    FI_d,
    FI_G,
    FS_op,
    FSG_op,
    Morphism,
    OI_d,
    OI_G,
    OS_op,
    OSG_op,
    StarQuiver,
    WindowError,
    category_from_json,
    enumeration_budget,
)
from .groups import FieldTables, FiniteGroup, cyclic, group_from_json, symmetric3, trivial_group


def _check_window(i: int, j: int, window: int | None):
    if window is not None and (i > window or j > window):
        raise WindowError(f"objects ({i}, {j}) exceed window {window}")


def hom_basis(cat: CategorySpec, i: int, j: int, window: int | None = None) -> tuple[Morphism, ...]:
    """All morphisms ``i -> j`` in canonical (lexicographic payload) order."""
    _check_window(i, j, window)
    return cat.hom_basis(i, j)


def compose(cat: CategorySpec, second: Morphism, first: Morphism) -> Morphism:
    """``second ∘ first``."""
    return cat.compose(second, first)


def self_embed_morphism(cat: CategorySpec, phi: Morphism) -> Morphism | None:
    """The self-embedding applied to ``phi``; ``None`` denotes a zero map (star fixture only)."""
    return cat.embed(phi)


def one_step_factor_check(cat: CategorySpec, i: int, m: int) -> bool:
    """Brute force: is every morphism ``i -> m`` a composite of one-step morphisms?"""
    if m <= i:
        return True
    reach = set(cat.hom_basis(i, i + 1))
    for k in range(i + 1, m):
        steps = cat.hom_basis(k, k + 1)
        reach = {cat.compose(t, psi) for t in steps for psi in reach}
    return reach == set(cat.hom_basis(i, m))


__all__ = [
    "BudgetError", "CategorySpec", "FI", "FI_G", "FI_d", "FS_op", "FSG_op", "FieldTables",
    "FiniteGroup", "Morphism", "OI", "OI_G", "OI_d", "OS_op", "OSG_op", "StarQuiver", "VI",
    "WindowError", "category_from_json", "compose", "cyclic", "enumeration_budget",
    "group_from_json", "hom_basis", "one_step_factor_check", "self_embed_morphism",
    "symmetric3", "trivial_group",
]
