"""Homology tables, degree statistics, Koszulity and genetic-functor checks.

Degrees are ints, with ``NEG_INF`` (a float) standing for -∞.  They are
serialized as exact integers or the string "-inf".
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field as dc_field

from ..combcat import CategorySpec
from ..exactla import QQ, Field, Mat, column_basis, kernel_basis, vstack
from .engine import MINIMAL, Stage, choose_mode, homology_dims_raw

NEG_INF = float("-inf")


def degree_json(d):
    return "-inf" if d == NEG_INF else int(d)


def degree_from_json(x):
    return NEG_INF if x == "-inf" else int(x)


def top_degree(dims) -> int | float:
    """max{j : dims[j] > 0}, or -∞."""
    nz = [j for j, d in enumerate(dims) if d]
    return nz[-1] if nz else NEG_INF


def initial_degree(V) -> int | float:
    nz = [j for j, d in enumerate(V.dims) if d]
    return nz[0] if nz else NEG_INF


# ---------------------------------------------------------------------------
# H_0 and torsion
# ---------------------------------------------------------------------------


@dataclass
class H0:
    dims: tuple
    projections: list   # per object: dim H_0(V)_j × dim V_j


def h0(V) -> H0:
    """V_j → V_j / (JV)_j in pivot-complement coordinates."""
    stage = Stage.whole(V)
    F = V.field
    dims, projs = [], []
    for j, m in enumerate(V.dims):
        if m == 0:
            dims.append(0)
            projs.append(Mat.zeros(F, 0, 0))
            continue
        Jb, jpiv = column_basis(stage.jimage(j))
        ident = Mat.identity(F, m)
        keep = [r for r in range(m) if r not in set(jpiv)]
        reduce = ident - Jb @ ident.select_rows(jpiv)
        dims.append(len(keep))
        projs.append(reduce.select_rows(keep))
    return H0(tuple(dims), projs)


def torsion_part_dims(V) -> tuple:
    """dim {v ∈ V_j : Jv = 0} for j < N; object N is not testable and reported as 0."""
    out = []
    for j, m in enumerate(V.dims):
        gens = V.cat.annihilator_generators(j, V.window)
        if m == 0 or j == V.window:
            out.append(0)
            continue
        mats = [V.act(g) for g in gens]
        if not mats:
            out.append(m)
            continue
        out.append(kernel_basis(vstack(mats)).cols)
    return tuple(out)


def torsion_degree(V) -> int | float:
    """Largest j < N carrying a nonzero J-annihilated element, or -∞."""
    return top_degree(torsion_part_dims(V))


# ---------------------------------------------------------------------------
# homology tables
# ---------------------------------------------------------------------------


@dataclass
class HomologyTable:
    window: int
    s_max: int
    dims: list            # dims[s][j]
    td: int | float
    mode: str = MINIMAL

    @property
    def hd(self) -> list:
        return [top_degree(row) for row in self.dims]

    @property
    def gd(self):
        return self.hd[0]

    def dim(self, s: int, j: int) -> int:
        return self.dims[s][j]

    def support(self, s: int) -> list[int]:
        return [j for j, d in enumerate(self.dims[s]) if d]

    @property
    def trusted_ranges(self) -> dict:
        return {"dims": [0, self.window], "hd": [0, self.window], "td": [0, self.window - 1]}

    def to_json(self) -> dict:
        return {
            "window": self.window,
            "s_max": self.s_max,
            "mode": self.mode,
            "dims": {f"{s},{j}": d for s, row in enumerate(self.dims) for j, d in enumerate(row)},
            "td": degree_json(self.td),
            "gd": degree_json(self.gd),
            "hd": [degree_json(h) for h in self.hd],
            "trusted_ranges": self.trusted_ranges,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "HomologyTable":
        N, s_max = obj["window"], obj["s_max"]
        dims = [[obj["dims"][f"{s},{j}"] for j in range(N + 1)] for s in range(s_max + 1)]
        return cls(N, s_max, [tuple(r) for r in dims], degree_from_json(obj["td"]), obj.get("mode", MINIMAL))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s"] + [str(j) for j in range(self.window + 1)])
        for s, row in enumerate(self.dims):
            w.writerow([s] + list(row))
        return buf.getvalue()

    def restricted(self, window: int) -> "HomologyTable":
        """The table on objects 0..window (td is recomputed from nothing, so pass it in if needed)."""
        return HomologyTable(window, self.s_max, [tuple(r[: window + 1]) for r in self.dims], self.td, self.mode)


def homology_dims(V, s_max: int, mode: str | None = None, **kw) -> HomologyTable:
    mode = mode or choose_mode(V.cat, V.field, V.window)
    dims = homology_dims_raw(V, s_max, mode, **kw)
    return HomologyTable(V.window, s_max, dims, torsion_degree(V), mode)


@dataclass
class Degrees:
    td: int | float
    gd: int | float
    hd: list

    def to_json(self) -> dict:
        return {"td": degree_json(self.td), "gd": degree_json(self.gd), "hd": [degree_json(h) for h in self.hd]}


def degrees(V, s_max: int, mode: str | None = None) -> Degrees:
    t = homology_dims(V, s_max, mode)
    return Degrees(t.td, t.gd, t.hd)


# ---------------------------------------------------------------------------
# Koszulity
# ---------------------------------------------------------------------------


class KoszulPreconditionError(ValueError):
    """The module is not generated in the requested degree."""


@dataclass
class KoszulVerdict:
    ok: bool
    d: int
    supports: list
    failures: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {"koszul": self.ok, "d": self.d, "supports": {str(s): sup for s, sup in enumerate(self.supports)},
                "failures": self.failures}


def koszul_check(V, d: int, s_max: int, table: HomologyTable | None = None) -> KoszulVerdict:
    """supp H_s(V) ⊆ {s + d} for s ≤ s_max, on the window."""
    t = table or homology_dims(V, s_max)
    if t.support(0) != [d]:
        raise KoszulPreconditionError(f"supp H_0 = {t.support(0)}, not generated in degree {d}")
    sups = [t.support(s) for s in range(s_max + 1)]
    bad = [s for s, sup in enumerate(sups) if any(j != s + d for j in sup)]
    return KoszulVerdict(not bad, d, sups, bad)


# ---------------------------------------------------------------------------
# genetic functors
# ---------------------------------------------------------------------------


@dataclass
class GeneticVerdict:
    ok: bool
    s: int
    window: int
    gd: int | float
    free: bool
    message: str = ""
    linear: dict | None = None

    def to_json(self) -> dict:
        out = {"ok": self.ok, "s": self.s, "window": self.window, "gd": degree_json(self.gd),
               "free": self.free, "message": self.message}
        if self.linear is not None:
            out["linear"] = self.linear
        return out


def _shifted_free_set(cat: CategorySpec, s: int, N: int):
    """The C-set k ↦ C(s, k+1), k < N, acted on through the self-embedding."""
    return [cat.hom_basis(s, k + 1) if s <= k + 1 else () for k in range(N)]


def _act_set(cat, phi, x):
    e = cat.embed(phi)
    return None if e is None else cat.compose(e, x)


def genetic_check(cat: CategorySpec, s: int, N: int, linear_window: int | None = None,
                  field: Field = QQ) -> GeneticVerdict:
    """Check gd(S_1 C(s, -)) ≤ s and that S_1 C(s, -) is free, on objects < N.

    The shifted free module is a linearized C-set, so its H_0 is spanned by
    the elements not hit from below, and it is free iff every element is
    uniquely φ·x for x in a set of C(j, j)-orbit representatives of the unhit
    elements.  With ``linear_window`` set, the same facts are recomputed with
    linear algebra on that smaller window.
    """
    if s >= N:
        raise ValueError("need s < N")
    X = _shifted_free_set(cat, s, N)
    unhit = []
    for k in range(N):
        hit = set()
        if k > 0:
            for t in cat.jreps(k):
                for x in X[k - 1]:
                    y = _act_set(cat, t, x)
                    if y is not None:
                        hit.add(y)
        unhit.append([x for x in X[k] if x not in hit])
    gd = top_degree([len(u) for u in unhit])
    msgs = []
    if gd != NEG_INF and gd > s:
        msgs.append(f"unhit elements at object {gd} > {s}")
    free = True
    reached: list[set] = [set() for _ in range(N)]
    for k in range(N):
        if not unhit[k]:
            continue
        G = cat.hom_basis(k, k)
        remaining = set(unhit[k])
        for x in unhit[k]:
            if x not in remaining:
                continue
            orbit = {_act_set(cat, g, x) for g in G}
            if None in orbit or len(orbit) != len(G):
                free = False
                msgs.append(f"C({k},{k}) does not act freely on {x.payload}")
            remaining -= orbit
            for k2 in range(k, N):
                for phi in cat.hom_basis(k, k2):
                    y = _act_set(cat, phi, x)
                    if y is None or y in reached[k2]:
                        free = False
                        if len(msgs) < 8:
                            msgs.append(f"{phi} sends {x.payload} to zero or to an element reached twice")
                        continue
                    reached[k2].add(y)
    for k in range(N):
        if len(reached[k]) != len(X[k]):
            free = False
            msgs.append(f"object {k}: {len(reached[k])} of {len(X[k])} elements generated")
            break
    ok = free and (gd == NEG_INF or gd <= s)
    lin = None
    if linear_window is not None:
        lin = _genetic_linear(cat, s, min(linear_window, N), field)
        if not lin["ok"]:
            ok = False
            msgs.append("linear cross-check failed")
    return GeneticVerdict(ok, s, N, gd, free, "; ".join(msgs), lin)


def _genetic_linear(cat, s, N, field):
    from ..repmod import free_module, shift

    V = shift(free_module(cat, s, N, field), 1)
    t = homology_dims(V, 1)
    h = t.dims[0]
    # dims of the free module on H_0: dim H_0(V)_j copies of C(j, -)/C(j, j)
    ind = [sum(h[j] * len(cat.hom_basis(j, k)) // cat.group_order(j) for j in range(k + 1) if h[j])
           for k in range(V.window + 1)]
    gd_ok = t.gd == NEG_INF or t.gd <= s
    h1_zero = not any(t.dims[1])
    dims_ok = tuple(ind) == tuple(V.dims)
    return {"ok": gd_ok and h1_zero and dims_ok, "window": V.window, "h0": list(h),
            "h1": list(t.dims[1]), "dims": list(V.dims), "free_dims": ind}
