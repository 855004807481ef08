"""Windowed modules: exact matrices for the generators of a category."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from typing import Mapping

from ..combcat import CategorySpec, Morphism
from ..exactla import Field, Mat, block_diag


class ModuleError(ValueError):
    """Inconsistent module data."""


class ActionModule:
    """A representation on objects ``0..window``.

    Only generator actions are stored (endomorphism generators at each object
    and the step representatives of ``cat``); the action of any other morphism
    is the product along its generator word.  ``gram`` optionally carries an
    invariant positive definite form per object (characteristic zero only),
    which lets covers pick invariant complements without group averaging.
    """

    def __init__(self, cat: CategorySpec, field: Field, window: int, dims, actions: Mapping[Morphism, Mat],
                 gram=None, expr=None):
        self.cat = cat
        self.field = field
        self.window = int(window)
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != self.window + 1:
            raise ModuleError(f"expected {self.window + 1} dims, got {len(self.dims)}")
        self._actions = dict(actions)
        for j in range(self.window + 1):
            for g in cat.generators_from(j, self.window):
                m = self._actions.get(g)
                if m is None:
                    raise ModuleError(f"missing action for generator {g}")
                if m.shape != (self.dims[g.target], self.dims[g.source]) or m.field != field:
                    raise ModuleError(f"action of {g} has shape {m.shape} over {m.field}")
        self._gram = None if gram is None else tuple(gram)
        self.expr = expr
        self._cache: dict = {}

    # -- actions --------------------------------------------------------------

    def generator_actions(self) -> dict:
        return dict(self._actions)

    def act(self, phi: Morphism | None, source: int | None = None, target: int | None = None) -> Mat:
        """Matrix of ``phi``; ``None`` (a zero placeholder) needs explicit ends."""
        if phi is None:
            return Mat.zeros(self.field, self.dims[target], self.dims[source])
        if phi.target > self.window:
            raise ModuleError(f"{phi} leaves the window {self.window}")
        hit = self._cache.get(phi)
        if hit is not None:
            return hit
        m = self._actions.get(phi)
        if m is None:
            m = Mat.identity(self.field, self.dims[phi.source])
            for g in self.cat.word(phi):
                m = self._actions[g] @ m
        self._cache[phi] = m
        return m

    def endo_action(self, phi: Morphism) -> Mat:
        if phi.source != phi.target:
            raise ValueError("not an endomorphism")
        return self.act(phi)

    def step_action(self, phi: Morphism) -> Mat:
        if phi.target != phi.source + 1:
            raise ValueError("not a one-step morphism")
        return self.act(phi)

    def gram(self, j: int) -> Mat | None:
        if self._gram is not None:
            return self._gram[j]
        return None

    @property
    def has_gram(self) -> bool:
        return self._gram is not None

    # -- small conveniences ----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.dims)

    def support(self) -> list[int]:
        return [j for j, d in enumerate(self.dims) if d]

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(json.dumps({"cat": self.cat.to_json(), "field": self.field.to_json(),
                             "window": self.window, "dims": self.dims}, sort_keys=True).encode())
        for g in sorted(self._actions):
            h.update(repr(g).encode())
            h.update(repr(self._actions[g].tolist()).encode())
        return h.hexdigest()[:16]

    def perturbed(self, gen: Morphism, row: int, col: int, delta=1) -> "ActionModule":
        """A copy with one entry of one generator matrix changed (for mutation tests)."""
        m = self._actions[gen].tolist()
        m[row][col] = m[row][col] + delta
        acts = dict(self._actions)
        acts[gen] = Mat.from_rows(self.field, m, self._actions[gen].cols)
        return ActionModule(self.cat, self.field, self.window, self.dims, acts, self._gram, None)

    def __repr__(self):
        return f"ActionModule({self.cat}, {self.field}, N={self.window}, dims={self.dims})"


@dataclass
class Submodule:
    """A submodule with normalized bases inside an ambient module.

    ``basis[j]`` has the identity at rows ``pivots[j]``; coordinates of an
    ambient vector lying in the span are read off those rows.
    """

    module: ActionModule
    ambient: ActionModule
    basis: tuple
    pivots: tuple

    @property
    def inclusion(self) -> tuple:
        return self.basis


@dataclass
class Quotient:
    module: ActionModule
    ambient: ActionModule
    projection: tuple
    lifts: tuple = dc_field(default=())


def zero_module(cat: CategorySpec, field: Field, window: int) -> ActionModule:
    acts = {}
    for j in range(window + 1):
        for g in cat.generators_from(j, window):
            acts[g] = Mat.zeros(field, 0, 0)
    return ActionModule(cat, field, window, [0] * (window + 1), acts, [Mat.zeros(field, 0, 0)] * (window + 1))


def gram_blocks(mods, j, field):
    grams = [m.gram(j) for m in mods]
    if any(g is None for g in grams):
        return None
    return block_diag(grams, field)
