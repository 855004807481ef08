"""Induced modules C ⊗_{C(i,i)} W, the projectives used by resolutions.

A basis of (C ⊗ W)_j is indexed by pairs (canonical right-orbit
representative μ: i -> j, basis vector of W).  A morphism γ acts by
γ·(μ ⊗ w) = μ' ⊗ ρ(h) w where γ∘μ = μ'∘h, so every action matrix is
block-monomial and is applied without ever being stored densely.
"""

from __future__ import annotations

from ..combcat import CategorySpec, Morphism
from ..exactla import Field, Mat, _from_raw, block_diag


class GroupRep:
    """A representation of C(i, i) on k^dim given by generator matrices."""

    def __init__(self, cat: CategorySpec, field: Field, obj: int, dim: int, gens: dict, gram: Mat | None = None):
        self.cat = cat
        self.field = field
        self.obj = obj
        self.dim = dim
        self.gens = gens
        self.gram = gram
        self._rho: dict = {}

    def rho(self, h: Morphism) -> Mat:
        m = self._rho.get(h)
        if m is None:
            m = Mat.identity(self.field, self.dim)
            for g in self.cat.endo_word(h):
                m = self.gens[g] @ m
            self._rho[h] = m
        return m

    def apply_rows(self, h: Morphism, rows: list) -> list:
        if self.cat.is_identity(h):
            return rows
        m = self.rho(h)
        ncols = len(rows[0]) if rows else 0
        if ncols == 0:
            return rows
        return (m @ _from_raw(self.field, rows, ncols))._rawrows()


class RegularRep(GroupRep):
    """The regular representation of C(i, i), basis = group elements in canonical order."""

    def __init__(self, cat: CategorySpec, field: Field, obj: int):
        elems = cat.hom_basis(obj, obj)
        self.elements = elems
        self.index = cat.hom_index(obj, obj)
        gram = Mat.identity(field, len(elems)) if field.char == 0 else None
        super().__init__(cat, field, obj, len(elems), {}, gram)
        self._perm: dict = {}

    def perm(self, h: Morphism) -> list[int]:
        """perm[c] = index of h∘g_c."""
        p = self._perm.get(h)
        if p is None:
            p = self._perm[h] = [self.index[self.cat.compose(h, g)] for g in self.elements]
        return p

    def rho(self, h: Morphism) -> Mat:
        m = self._rho.get(h)
        if m is None:
            items = [(r, c, 1) for c, r in enumerate(self.perm(h))]
            m = Mat.from_sparse(self.field, self.dim, self.dim, items)
            self._rho[h] = m
        return m

    def apply_rows(self, h: Morphism, rows: list) -> list:
        if self.cat.is_identity(h):
            return rows
        out = [None] * self.dim
        for c, r in enumerate(self.perm(h)):
            out[r] = rows[c]
        return out


class InducedModule:
    """⊕_k C ⊗_{C(i_k, i_k)} W_k on objects ``0..window``."""

    def __init__(self, cat: CategorySpec, field: Field, window: int, summands: list[GroupRep]):
        self.cat = cat
        self.field = field
        self.window = window
        self.summands = list(summands)
        self.offsets = []
        dims = []
        for j in range(window + 1):
            off = {}
            pos = 0
            for k, W in enumerate(self.summands):
                if W.obj > j or W.dim == 0:
                    continue
                for mu in cat.right_reps(W.obj, j):
                    off[(k, mu)] = pos
                    pos += W.dim
            self.offsets.append(off)
            dims.append(pos)
        self.dims = tuple(dims)
        self._plans: dict = {}

    def generator_degrees(self) -> dict:
        out: dict = {}
        for W in self.summands:
            if W.dim:
                out[W.obj] = out.get(W.obj, 0) + W.dim
        return dict(sorted(out.items()))

    def degree0_rows(self, j: int) -> list[int]:
        """Rows of basis vectors id_j ⊗ w for summands generated at ``j``."""
        ident = self.cat.identity(j)
        rows = []
        for (k, mu), pos in self.offsets[j].items():
            if mu == ident:
                rows.extend(range(pos, pos + self.summands[k].dim))
        return sorted(rows)

    def _plan(self, phi: Morphism) -> list:
        """(source offset, target offset, summand, h) per block, with φ∘μ = μ'∘h."""
        plan = self._plans.get(phi)
        if plan is None:
            cat = self.cat
            plan = []
            for (k, mu), pos in self.offsets[phi.source].items():
                mu2, h = cat.right_canon(cat.compose(phi, mu))
                plan.append((pos, self.offsets[phi.target][(k, mu2)], self.summands[k], h))
            self._plans[phi] = plan
        return plan

    def apply(self, phi: Morphism | None, X: Mat, source: int | None = None, target: int | None = None) -> Mat:
        """``act(phi) @ X`` computed block by block."""
        if phi is None:
            return Mat.zeros(self.field, self.dims[target], X.cols)
        j, j2 = phi.source, phi.target
        if X.rows != self.dims[j]:
            raise ValueError(f"apply: {X.rows} rows, expected {self.dims[j]}")
        ncols = X.cols
        n2 = self.dims[j2]
        if ncols == 0 or n2 == 0 or X.rows == 0:
            return Mat.zeros(self.field, n2, ncols)
        return _from_raw(self.field, self.apply_raw(phi, X._rawrows(), ncols), ncols)

    def apply_raw(self, phi: Morphism, raw: list, ncols: int) -> list:
        """``apply`` on plain row lists, skipping the conversion to a matrix."""
        out = [None] * self.dims[phi.target]
        for pos, dst, W, h in self._plan(phi):
            block = W.apply_rows(h, raw[pos:pos + W.dim])
            for r, row in enumerate(block):
                cur = out[dst + r]
                out[dst + r] = row if cur is None else [a + b for a, b in zip(cur, row)]
        zero = [0] * ncols
        return [zero if r is None else r for r in out]

    def act(self, phi: Morphism | None, source: int | None = None, target: int | None = None) -> Mat:
        if phi is None:
            return Mat.zeros(self.field, self.dims[target], self.dims[source])
        return self.apply(phi, Mat.identity(self.field, self.dims[phi.source]))

    @property
    def has_gram(self) -> bool:
        return all(W.gram is not None for W in self.summands)

    def gram(self, j: int) -> Mat | None:
        if not self.has_gram:
            return None
        blocks = [None] * len(self.offsets[j])
        order = sorted(self.offsets[j].items(), key=lambda kv: kv[1])
        blocks = [self.summands[k].gram for (k, _), _ in order]
        return block_diag(blocks, self.field)

    def to_action_module(self):
        """Materialize as an explicit :class:`~homcat.repmod.ActionModule`."""
        from ..repmod import ActionModule

        acts = {}
        for j in range(self.window + 1):
            for g in self.cat.generators_from(j, self.window):
                acts[g] = self.act(g)
        grams = [self.gram(j) for j in range(self.window + 1)] if self.has_gram else None
        return ActionModule(self.cat, self.field, self.window, self.dims, acts, grams)
