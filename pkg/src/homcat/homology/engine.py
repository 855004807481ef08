"""Covers, syzygies, resolutions and homology dimensions.

Every stage of a resolution is a submodule M of an ambient module: the input
module itself at stage 0, then the kernel Ω^s inside the projective P^{s-1}.
A stage is stored as one normalized basis per object, so coordinates of
ambient vectors lying in M are read off the pivot rows.

Two cover strategies are provided.

MINIMAL: at each object pick a C(j, j)-stable complement W_j of the J-image
in M_j and use P = ⊕ C ⊗_{C(j,j)} W_j.  Complements come from an invariant
positive definite form in characteristic 0, and from averaging a projection
over C(j, j) in characteristic p > |C(j, j)|.  The resulting complex P/JP has
zero differential, so H_s = W^s.

GENERIC: free generators on lifts of a spanning set of M_j / (JM)_j, chosen
in canonical basis order, optionally duplicated.  Homology is then computed
from the degree-zero part of the differentials.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..combcat import CategorySpec, Morphism
from ..exactla import Field, Mat, _from_raw, column_basis, hstack, kernel_with_pivots, kernel_basis, rank
from .induced import GroupRep, InducedModule, RegularRep

MINIMAL = "minimal"
GENERIC = "generic"


class ResolutionError(RuntimeError):
    """An internal consistency check failed (never expected on valid input)."""


def max_group_order(cat: CategorySpec, window: int) -> int:
    return max(cat.group_order(j) for j in range(window + 1))


def choose_mode(cat: CategorySpec, field: Field, window: int) -> str:
    """MINIMAL whenever every C(j, j) in the window has invertible order."""
    if field.char == 0 or field.char > max_group_order(cat, window):
        return MINIMAL
    return GENERIC


def _apply(ambient, phi: Morphism, X: Mat) -> Mat:
    if hasattr(ambient, "apply"):
        return ambient.apply(phi, X)
    return ambient.act(phi) @ X


class Stage:
    """A submodule of ``ambient`` given by normalized bases per object."""

    def __init__(self, ambient, bases: list, pivots: list):
        self.ambient = ambient
        self.cat = ambient.cat
        self.field = ambient.field
        self.window = ambient.window
        self.bases = bases
        self.pivots = pivots
        self.dims = tuple(b.cols for b in bases)
        self._gram: dict = {}
        self._acts: dict = {}

    @classmethod
    def whole(cls, V) -> "Stage":
        F = V.field
        return cls(V, [Mat.identity(F, d) for d in V.dims], [tuple(range(d)) for d in V.dims])

    def coords_action(self, phi: Morphism) -> Mat:
        """Matrix of ``phi`` on M in the stage's own coordinates."""
        hit = self._acts.get(phi)
        if hit is None:
            img = _apply(self.ambient, phi, self.bases[phi.source])
            hit = self._acts[phi] = img.select_rows(self.pivots[phi.target])
        return hit

    def jimage(self, j: int) -> Mat:
        parts = [self.coords_action(t) for t in self.cat.jreps(j) if self.dims[t.source]]
        if not parts:
            return Mat.zeros(self.field, self.dims[j], 0)
        return hstack(parts)

    def gram(self, j: int) -> Mat | None:
        if j in self._gram:
            return self._gram[j]
        G = self.ambient.gram(j) if getattr(self.ambient, "has_gram", False) else None
        if G is None:
            G = _averaged_gram(self, j) if self.field.char == 0 else None
            self._gram[j] = G
            return G
        B = self.bases[j]
        out = B.T @ G @ B
        self._gram[j] = out
        return out

    def to_action_module(self):
        from ..repmod import ActionModule

        acts = {}
        for j in range(self.window + 1):
            for g in self.cat.generators_from(j, self.window):
                acts[g] = self.coords_action(g)
        grams = None
        if self.field.char == 0 and getattr(self.ambient, "has_gram", False):
            grams = [self.gram(j) for j in range(self.window + 1)]
        return ActionModule(self.cat, self.field, self.window, self.dims, acts, grams)


def _averaged_gram(stage: Stage, j: int) -> Mat:
    """Σ_g ρ(g)^T ρ(g): invariant and positive definite over Q."""
    F = stage.field
    out = Mat.zeros(F, stage.dims[j], stage.dims[j])
    for g in stage.cat.hom_basis(j, j):
        r = stage.coords_action(g)
        out = out + r.T @ r
    return out


def _reynolds_complement(stage: Stage, j: int, Jb: Mat, jpiv) -> Mat:
    """An invariant complement of span(Jb) by averaging a projection over C(j, j)."""
    F = stage.field
    m = stage.dims[j]
    cat = stage.cat
    ident = Mat.identity(F, m)
    proj = ident - Jb @ ident.select_rows(jpiv)
    acc = Mat.zeros(F, m, m)
    for g in cat.hom_basis(j, j):
        acc = acc + stage.coords_action(g) @ proj @ stage.coords_action(cat.endo_inverse(g))
    return column_basis(acc)[0]


def _quotient_projection(Jb: Mat, jpiv, m: int) -> Mat:
    """V_j → V_j / span(Jb) in coordinates indexed by the non-pivot rows.

    Jb is normalized (identity on the pivot rows), so the projection is the
    identity on non-pivot rows minus Jb's non-pivot rows placed at the pivots.
    """
    pivset = set(jpiv)
    keep = [x for x in range(m) if x not in pivset]
    A = Jb.select_rows(keep)._rawrows()
    items = [(i, x, 1) for i, x in enumerate(keep)]
    for i, row in enumerate(A):
        for k, p in enumerate(jpiv):
            if row[k] != 0:
                items.append((i, p, -row[k]))
    return Mat.from_sparse(Jb.field, len(keep), m, items)


def _apply_raw(ambient, phi: Morphism, raw: list, ncols: int) -> list:
    if hasattr(ambient, "apply_raw"):
        return ambient.apply_raw(phi, raw, ncols)
    return (ambient.act(phi) @ _from_raw(ambient.field, raw, ncols))._rawrows()


def _orbit(stage: Stage, j: int, v: Mat) -> Mat:
    """Columns g·v in ambient coordinates for g in C(j, j), in canonical order.

    ``v`` is an ambient vector at ``j``; the orbit is built breadth-first over
    the endomorphism generators, one application per generator and level.
    Work happens on plain row lists; only the result becomes a matrix.
    """
    cat = stage.cat
    amb = stage.ambient
    gens = cat.endo_generators(j)
    n = v.rows
    ident = cat.identity(j)
    frontier, X = [ident], v._rawrows()
    cols_of = {ident: [row[0] for row in X]}
    while frontier:
        nxt = []
        for g in gens:
            Y = _apply_raw(amb, g, X, len(frontier))
            for c, h in enumerate(frontier):
                gh = cat.compose(g, h)
                if gh not in cols_of:
                    cols_of[gh] = [row[c] for row in Y]
                    nxt.append(gh)
        if not nxt:
            break
        X = [[cols_of[h][r] for h in nxt] for r in range(n)]
        frontier = nxt
    elems = cat.hom_basis(j, j)
    if len(cols_of) != len(elems):
        raise ResolutionError(f"endomorphism generators at {j} do not generate C({j}, {j})")
    cols = [cols_of[g] for g in elems]
    return _from_raw(stage.field, [[col[r] for col in cols] for r in range(n)], len(elems))


@dataclass
class Cover:
    """P → M for one stage: the projective, the images of its generators, H_0 data."""

    module: InducedModule
    images: list          # per summand: generator images in ambient coordinates
    h0: tuple             # dim of M_j / (JM)_j
    generators: dict      # object -> multiplicity


def cover(stage: Stage, mode: str = MINIMAL, redundancy: int = 1, complement: str = "auto") -> Cover:
    cat, F, N = stage.cat, stage.field, stage.window
    summands, images, h0, gens = [], [], [], {}
    for j in range(N + 1):
        m = stage.dims[j]
        if m == 0:
            h0.append(0)
            continue
        J = stage.jimage(j)
        Jb, jpiv = column_basis(J)
        r = Jb.cols
        h0.append(m - r)
        if r == m:
            continue
        B = stage.bases[j]
        if mode == MINIMAL:
            if r == 0:
                Wb = Mat.identity(F, m)
            elif F.char == 0 and complement != "reynolds":
                G = stage.gram(j)
                Wb = kernel_basis(Jb.T @ G)
            else:
                Wb = _reynolds_complement(stage, j, Jb, jpiv)
            Wb, wpiv = column_basis(Wb)
            if Wb.cols != m - r:
                raise ResolutionError(f"complement at {j} has dimension {Wb.cols}, expected {m - r}")
            rho = {g: (stage.coords_action(g) @ Wb).select_rows(wpiv) for g in cat.endo_generators(j)}
            gram = None
            if F.char == 0:
                G = stage.gram(j)
                gram = Wb.T @ G @ Wb
            summands.append(GroupRep(cat, F, j, Wb.cols, rho, gram))
            images.append(B @ Wb)
            gens[j] = Wb.cols
        else:
            # lifts: the first row off the J-image pivots whose basis vector is
            # outside the span of the C(j, j)-orbits of earlier lifts, tested in
            # M_j / (JM)_j where that vector is a unit vector
            h = m - r
            proj = _quotient_projection(Jb, jpiv, m)
            keep = [x for x in range(m) if x not in set(jpiv)]
            S, spiv, lifts = Mat.zeros(F, h, 0), (), []
            for i, b in enumerate(keep):
                if S.cols == h:
                    break
                if i in spiv:
                    col = S.select_cols([spiv.index(i)])
                    if col == Mat.from_sparse(F, h, 1, [(i, 0, 1)]):
                        continue
                orbit = _orbit(stage, j, B.select_cols([b]))
                lifts.append(orbit)
                S, spiv = column_basis(hstack([S, proj @ orbit.select_rows(stage.pivots[j])]))
            if S.cols != h:
                raise ResolutionError(f"lifts at {j} do not span modulo the J-image")
            for orbit in lifts:
                for _ in range(redundancy):
                    summands.append(RegularRep(cat, F, j))
                    images.append(orbit)
            lifts = lifts * redundancy
            gens[j] = len(lifts)
    P = InducedModule(cat, F, N, summands)
    return Cover(P, images, tuple(h0), gens)


def differential(stage: Stage, cov: Cover, j: int) -> Mat:
    """The map P_j → ambient_j of the cover, in ambient coordinates."""
    P = cov.module
    cols = []
    amb = stage.ambient
    for (k, mu), _pos in sorted(P.offsets[j].items(), key=lambda kv: kv[1]):
        cols.append(_apply(amb, mu, cov.images[k]))
    if not cols:
        return Mat.zeros(stage.field, amb.dims[j], 0)
    return hstack(cols)


def kernel_stage(stage: Stage, cov: Cover, keep_differentials: bool = False):
    """Ω = ker(P → M) as a new stage inside P; optionally the differentials too."""
    P = cov.module
    bases, pivots, diffs = [], [], []
    for j in range(stage.window + 1):
        D = differential(stage, cov, j)
        Dc = D.select_rows(stage.pivots[j])
        K, kpiv = kernel_with_pivots(Dc)
        if Dc.cols - K.cols != stage.dims[j]:
            raise ResolutionError(f"cover is not surjective at object {j}")
        bases.append(K)
        pivots.append(kpiv)
        if keep_differentials:
            diffs.append(D)
    return Stage(P, bases, pivots), diffs


@dataclass
class ResolutionStep:
    s: int
    generators: dict          # object -> multiplicity
    module: InducedModule     # P^s
    differential: list        # per object: P^s_j -> P^{s-1}_j (or V_j for s = 0)
    h0: tuple                 # dims of H_0 of the module being covered


@dataclass
class FreeResolution:
    mode: str
    window: int
    s_max: int
    steps: list = dc_field(default_factory=list)
    stages: list = dc_field(default_factory=list)

    def generator_degrees(self, s: int) -> dict:
        return dict(self.steps[s].generators)


def resolution(V, s_max: int, mode: str | None = None, redundancy: int = 1,
               redundant_depth: int = 1) -> FreeResolution:
    """P^0 → V and P^s → P^{s-1} for s ≤ s_max, exact on the window."""
    mode = mode or choose_mode(V.cat, V.field, V.window)
    stage = Stage.whole(V)
    res = FreeResolution(mode, V.window, s_max)
    for s in range(s_max + 1):
        cov = cover(stage, mode, redundancy if s < redundant_depth else 1)
        res.stages.append(stage)
        nxt, diffs = kernel_stage(stage, cov, keep_differentials=True)
        res.steps.append(ResolutionStep(s, cov.generators, cov.module, diffs, cov.h0))
        stage = nxt
    res.stages.append(stage)
    return res


def syzygy(V, mode: str | None = None):
    """The kernel of the cover of ``V``, as an explicit module."""
    mode = mode or choose_mode(V.cat, V.field, V.window)
    stage = Stage.whole(V)
    nxt, _ = kernel_stage(stage, cover(stage, mode))
    return nxt.to_action_module()


def h0_dims(stage: Stage) -> tuple:
    out = []
    for j in range(stage.window + 1):
        m = stage.dims[j]
        out.append(m - rank(stage.jimage(j)) if m else 0)
    return tuple(out)


def homology_dims_raw(V, s_max: int, mode: str | None = None, redundancy: int = 1,
                      complement: str = "auto", redundant_depth: int = 1) -> list[tuple]:
    """dim H_s(V)_j for 0 ≤ s ≤ s_max, 0 ≤ j ≤ N, as a list of tuples indexed by s.

    In GENERIC mode every generator of the first ``redundant_depth`` covers is
    repeated ``redundancy`` times, which makes the resolution deliberately
    non-minimal without changing the answer.
    """
    mode = mode or choose_mode(V.cat, V.field, V.window)
    if mode == MINIMAL:
        return _homology_minimal(V, s_max, complement)
    return _homology_generic(V, s_max, redundancy, redundant_depth)


def _homology_minimal(V, s_max, complement):
    stage = Stage.whole(V)
    out = []
    for s in range(s_max + 1):
        if s == s_max:
            out.append(h0_dims(stage))
            break
        cov = cover(stage, MINIMAL, 1, complement)
        out.append(cov.h0)
        if all(d == 0 for d in stage.dims):
            out.extend([(0,) * (V.window + 1)] * (s_max - s))
            break
        stage, _ = kernel_stage(stage, cov)
    return out


def _stage_degree0_rank(stage: Stage, j: int) -> int:
    """Rank of Ω_j in (P/JP)_j; equals the rank of the degree-zero block of any cover of Ω."""
    B = stage.bases[j]
    if B.cols == 0:
        return 0
    return rank(B.select_rows(stage.ambient.degree0_rows(j)))


def _homology_generic(V, s_max, redundancy, redundant_depth):
    N = V.window
    stage = Stage.whole(V)
    wdims, dbar = [], [(0,) * (N + 1)]
    for s in range(s_max + 1):
        cov = cover(stage, GENERIC, redundancy if s < redundant_depth else 1)
        wdims.append(tuple(sum(W.dim for W in cov.module.summands if W.obj == j) for j in range(N + 1)))
        stage, _ = kernel_stage(stage, cov)
        # the last syzygy only contributes its image in P/JP, so it is never covered
        dbar.append(tuple(_stage_degree0_rank(stage, j) for j in range(N + 1)))
    out = []
    for s in range(s_max + 1):
        out.append(tuple(wdims[s][j] - dbar[s][j] - dbar[s + 1][j] for j in range(N + 1)))
    return out
