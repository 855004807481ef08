"""Module constructions: free modules, truncation, shift, submodules,
quotients, sums and torsion quotients, plus the functoriality audit."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from ..combcat import CategorySpec, WindowError
from ..exactla import Field, Mat, QQ, block_diag, column_basis, hstack, inverse, rank
from .module import ActionModule, ModuleError, Quotient, Submodule, gram_blocks


def _incoming(cat: CategorySpec, window: int):
    """Generators grouped by target: (endo generators, generators from lower objects)."""
    endo = {j: [] for j in range(window + 1)}
    lower = {j: [] for j in range(window + 1)}
    for i in range(window + 1):
        for g in cat.generators_from(i, window):
            (endo if g.source == g.target else lower)[g.target].append(g)
    return endo, lower


def free_module(cat: CategorySpec, i: int, window: int, field: Field = QQ) -> ActionModule:
    """The representable module C(i, -) with basis the canonical hom-basis."""
    if i > window or i < 0:
        raise WindowError(f"free generator at {i} outside window {window}")
    dims = [len(cat.hom_basis(i, j)) for j in range(window + 1)]
    acts = {}
    for j in range(window + 1):
        src = cat.hom_basis(i, j)
        for g in cat.generators_from(j, window):
            idx = cat.hom_index(i, g.target)
            items = [(idx[cat.compose(g, mu)], c, 1) for c, mu in enumerate(src)]
            acts[g] = Mat.from_sparse(field, dims[g.target], dims[j], items)
    grams = [Mat.identity(field, d) for d in dims] if field.char == 0 else None
    from .expr import Free

    return ActionModule(cat, field, window, dims, acts, grams, expr=Free(i))


# ---------------------------------------------------------------------------
# functoriality audit
# ---------------------------------------------------------------------------


@dataclass
class ValidationResult:
    ok: bool
    message: str = ""
    witness: dict | None = None

    def __bool__(self):
        return self.ok


def validate_module(V: ActionModule) -> ValidationResult:
    """Exhaustive functoriality audit within the window.

    For every object ``i`` with ``V_i != 0`` the hom-sets C(i, j) are walked
    breadth first from the identity along generators.  The first path to a
    morphism defines its matrix; every other generator edge into it must give
    the same matrix.  Passing means the generator matrices extend to a functor.
    """
    cat, N = V.cat, V.window
    gens_from = {j: cat.generators_from(j, N) for j in range(N + 1)}
    for j in range(N + 1):
        ident = V.act(cat.identity(j))
        if ident != Mat.identity(V.field, V.dims[j]):
            return ValidationResult(False, f"identity at object {j} does not act as the identity",
                                    {"object": j})
    for i in range(N + 1):
        if V.dims[i] == 0:
            continue
        start = cat.identity(i)
        T = {start: Mat.identity(V.field, V.dims[i])}
        via = {start: None}
        queue = deque([start])
        while queue:
            alpha = queue.popleft()
            Ta = T[alpha]
            for g in gens_from[alpha.target]:
                beta = cat.compose(g, alpha)
                Tb = V._actions[g] @ Ta
                if beta not in T:
                    T[beta] = Tb
                    via[beta] = (g, alpha)
                    queue.append(beta)
                elif T[beta] != Tb:
                    g0, a0 = via[beta] if via[beta] else (None, None)
                    return ValidationResult(
                        False,
                        f"factorizations of {beta} disagree: {g} after {alpha} versus {g0} after {a0}",
                        {"object": beta.target, "morphism": repr(beta),
                         "first": [repr(g0), repr(a0)], "second": [repr(g), repr(alpha)]})
    return ValidationResult(True, "ok")


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def truncate(V: ActionModule, n: int) -> ActionModule:
    """τ_n: zero below ``n``, unchanged from ``n`` on."""
    if n < 0 or n > V.window + 1:
        raise ValueError(f"truncation degree {n} outside 0..{V.window + 1}")
    dims = [d if j >= n else 0 for j, d in enumerate(V.dims)]
    acts = {}
    for g, m in V.generator_actions().items():
        if g.source >= n:
            acts[g] = m
        else:
            acts[g] = Mat.zeros(V.field, dims[g.target], 0)
    grams = None
    if V.has_gram:
        grams = [V.gram(j) if j >= n else Mat.zeros(V.field, 0, 0) for j in range(V.window + 1)]
    from .expr import Truncate

    return ActionModule(V.cat, V.field, V.window, dims, acts, grams,
                        expr=Truncate(V.expr, n) if V.expr is not None else None)


def shift(V: ActionModule, a: int = 1) -> ActionModule:
    """S_a: pull back τ_a V along the a-fold self-embedding."""
    if a < 0:
        raise ValueError("shift amount must be non-negative")
    if a > V.window:
        raise WindowError(f"cannot shift window {V.window} by {a}")
    cat, N = V.cat, V.window - a
    dims = V.dims[a:]
    acts = {}
    for j in range(N + 1):
        for g in cat.generators_from(j, N):
            acts[g] = V.act(cat.embed_power(g, a), g.source + a, g.target + a)
    grams = [V.gram(j + a) for j in range(N + 1)] if V.has_gram else None
    from .expr import Shift

    return ActionModule(cat, V.field, N, dims, acts, grams,
                        expr=Shift(V.expr, a) if V.expr is not None else None)


def _normalize_gens(V: ActionModule, gens) -> dict:
    """Accept ``{j: [vectors]}`` or ``[(j, vector), ...]``."""
    out = {j: [] for j in range(V.window + 1)}
    items = gens.items() if isinstance(gens, Mapping) else None
    if items is None:
        pairs = list(gens)
    else:
        pairs = [(j, v) for j, vs in items for v in vs]
    for j, v in pairs:
        if j < 0 or j > V.window:
            raise WindowError(f"generator at object {j} outside window {V.window}")
        v = list(v)
        if len(v) != V.dims[j]:
            raise ModuleError(f"generator at {j} has length {len(v)}, expected {V.dims[j]}")
        out[j].append(v)
    return out


def _span_closure(V: ActionModule, j: int, cols: Mat, endo_gens) -> tuple[Mat, tuple]:
    B, piv = column_basis(cols)
    if not endo_gens or B.cols == 0:
        return B, piv
    while True:
        grown = hstack([B] + [V.act(g) @ B for g in endo_gens])
        B2, piv2 = column_basis(grown)
        if B2.cols == B.cols:
            return B2, piv2
        B, piv = B2, piv2


def _submodule_from_bases(V: ActionModule, bases, pivots, expr=None) -> Submodule:
    cat, N = V.cat, V.window
    dims = [b.cols for b in bases]
    acts = {}
    for j in range(N + 1):
        for g in cat.generators_from(j, N):
            img = V.act(g) @ bases[j]
            acts[g] = img.select_rows(pivots[g.target])
    grams = None
    if V.has_gram:
        grams = [bases[j].T @ V.gram(j) @ bases[j] for j in range(N + 1)]
    W = ActionModule(cat, V.field, N, dims, acts, grams, expr=expr)
    return Submodule(W, V, tuple(bases), tuple(pivots))


def submodule_span(V: ActionModule, gens) -> Submodule:
    """Smallest submodule containing the given vectors.

    Objects are processed upward once; at each object the span of the given
    vectors and the images from below is closed under endomorphism generators.
    """
    g = _normalize_gens(V, gens)
    endo, lower = _incoming(V.cat, V.window)
    bases, pivots = [], []
    for j in range(V.window + 1):
        parts = []
        if g[j]:
            parts.append(Mat.from_columns(V.field, V.dims[j], g[j]))
        for h in lower[j]:
            parts.append(V.act(h) @ bases[h.source])
        cols = hstack(parts) if parts else Mat.zeros(V.field, V.dims[j], 0)
        B, piv = _span_closure(V, j, cols, endo[j])
        bases.append(B)
        pivots.append(piv)
    from .expr import SubSpan

    expr = None
    if V.expr is not None:
        expr = SubSpan(V.expr, tuple((j, tuple(v)) for j in range(V.window + 1) for v in g[j]))
    return _submodule_from_bases(V, bases, pivots, expr)


def radical(V: ActionModule) -> Submodule:
    """JV: the span of all images of morphisms between distinct objects."""
    bases, pivots = [], []
    for j in range(V.window + 1):
        parts = [V.act(t) @ Mat.identity(V.field, V.dims[t.source]) for t in V.cat.jreps(j)]
        cols = hstack(parts) if parts else Mat.zeros(V.field, V.dims[j], 0)
        B, piv = column_basis(cols)
        bases.append(B)
        pivots.append(piv)
    return _submodule_from_bases(V, bases, pivots)


def is_submodule(V: ActionModule, bases) -> tuple[bool, str]:
    for j in range(V.window + 1):
        for g in V.cat.generators_from(j, V.window):
            img = V.act(g) @ bases[j]
            if rank(hstack([bases[g.target], img])) != bases[g.target].cols:
                return False, f"action of {g} leaves the subspace at object {g.target}"
    return True, ""


def quotient(V: ActionModule, W) -> Quotient:
    """V / W for a submodule ``W`` (a :class:`Submodule` of ``V`` or per-object bases).

    The quotient basis at each object is the set of standard basis vectors
    off the pivot rows of the (normalized) submodule basis.
    """
    if isinstance(W, Submodule):
        if W.ambient is not V and W.ambient.dims != V.dims:
            raise ModuleError("submodule does not live in this module")
        bases = list(W.basis)
    else:
        bases = list(W)
    normalized = [column_basis(b) for b in bases]
    ok, msg = is_submodule(V, [b for b, _ in normalized])
    if not ok:
        raise ModuleError(f"not a submodule: {msg}")
    F = V.field
    proj, lifts, grams = [], [], []
    for j in range(V.window + 1):
        B, piv = normalized[j]
        n = V.dims[j]
        pivset = set(piv)
        rest = [r for r in range(n) if r not in pivset]
        # v mod W has coordinates v[rest] - B[rest] v[piv]
        P = Mat.identity(F, n).select_rows(rest) - (B.select_rows(rest) @ Mat.identity(F, n).select_rows(piv))
        E = Mat.identity(F, n).select_cols(rest)
        proj.append(P)
        lifts.append(E)
        if V.has_gram:
            G = V.gram(j)
            if B.cols:
                G = G - G @ B @ inverse(B.T @ G @ B) @ B.T @ G
            grams.append(G.select_rows(rest).select_cols(rest))
    acts = {}
    for j in range(V.window + 1):
        for g in V.cat.generators_from(j, V.window):
            acts[g] = proj[g.target] @ V.act(g) @ lifts[j]
    dims = [p.rows for p in proj]
    from .expr import Quot

    expr = None
    if isinstance(W, Submodule) and V.expr is not None and W.module.expr is not None:
        expr = Quot(V.expr, W.module.expr)
    Q = ActionModule(V.cat, F, V.window, dims, acts, grams if V.has_gram else None, expr=expr)
    return Quotient(Q, V, tuple(proj), tuple(lifts))


def direct_sum(*mods: ActionModule) -> ActionModule:
    if not mods:
        raise ValueError("direct_sum needs at least one module")
    V0 = mods[0]
    for M in mods[1:]:
        if M.cat != V0.cat or M.field != V0.field or M.window != V0.window:
            raise ModuleError("direct_sum: category, field or window mismatch")
    dims = [sum(M.dims[j] for M in mods) for j in range(V0.window + 1)]
    acts = {}
    for j in range(V0.window + 1):
        for g in V0.cat.generators_from(j, V0.window):
            acts[g] = block_diag([M.act(g) for M in mods], V0.field)
    grams = None
    if all(M.has_gram for M in mods):
        grams = [gram_blocks(mods, j, V0.field) for j in range(V0.window + 1)]
    from .expr import Sum

    expr = None
    if all(M.expr is not None for M in mods):
        expr = Sum(tuple(M.expr for M in mods))
    return ActionModule(V0.cat, V0.field, V0.window, dims, acts, grams, expr=expr)


def torsion_quotient(V: ActionModule, m: int) -> ActionModule:
    """V / τ_{m+1} V, supported on objects ``<= m``."""
    if m < 0 or m > V.window:
        raise ValueError(f"torsion cutoff {m} outside 0..{V.window}")
    F = V.field
    bases = [Mat.identity(F, d) if j > m else Mat.zeros(F, d, 0) for j, d in enumerate(V.dims)]
    Q = quotient(V, bases).module
    from .expr import TorsionQuot

    Q.expr = TorsionQuot(V.expr, m) if V.expr is not None else None
    return Q


def restrict(V: ActionModule, window: int) -> ActionModule:
    """Forget objects above ``window``."""
    if window > V.window:
        raise WindowError("cannot restrict to a larger window")
    acts = {}
    for j in range(window + 1):
        for g in V.cat.generators_from(j, window):
            acts[g] = V.act(g)
    grams = [V.gram(j) for j in range(window + 1)] if V.has_gram else None
    return ActionModule(V.cat, V.field, window, V.dims[:window + 1], acts, grams, expr=V.expr)


def ses_dims_ok(sub: Submodule, quo: Quotient) -> bool:
    return all(a == b + c for a, b, c in zip(sub.ambient.dims, sub.module.dims, quo.module.dims))
