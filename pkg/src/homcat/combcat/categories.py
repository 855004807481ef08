"""The combinatorial categories and their morphism calculus.

Every kind presents objects ``0, 1, ..., N`` and exposes the same small
interface: enumerate hom-sets in canonical order, compose, prepend a fresh
point (the self-embedding), and factor morphisms into generators.  Module
actions are only ever stored for generators: endomorphism generators at each
object plus one representative of each left orbit of one-step morphisms.
"""

from __future__ import annotations

import functools
import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterator

from .groups import FieldTables, FiniteGroup, trivial_group


class WindowError(ValueError):
    """An object index lies outside the configured window."""


class BudgetError(RuntimeError):
    """A hom-set is larger than the enumeration budget allows."""


DEFAULT_BUDGET = 2_000_000


def enumeration_budget() -> int:
    raw = os.environ.get("HOMCAT_BUDGET")
    if raw is None or raw == "":
        return DEFAULT_BUDGET
    return int(raw)


@dataclass(frozen=True, order=True)
class Morphism:
    source: int
    target: int
    payload: tuple

    def __repr__(self):
        return f"Morphism({self.source}->{self.target}, {self.payload})"


def _inversions(f) -> int:
    return sum(1 for a in range(len(f)) for b in range(a + 1, len(f)) if f[a] > f[b])


def _stirling2(n: int, k: int) -> int:
    return sum((-1) ** t * math.comb(k, t) * (k - t) ** n for t in range(k + 1)) // math.factorial(k)


class CategorySpec:
    """Base class.  Subclasses fill in the payload-level operations."""

    kind = "abstract"

    # -- identity and hashing ----------------------------------------------

    def _key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return type(other) is type(self) and other._key() == self._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return self.name

    @property
    def name(self) -> str:
        return self.kind

    # -- payload level, per kind --------------------------------------------

    def count(self, i: int, j: int) -> int:
        raise NotImplementedError

    def _enumerate(self, i: int, j: int) -> Iterator[tuple]:
        raise NotImplementedError

    def _compose(self, second: tuple, first: tuple, i: int, j: int, k: int) -> tuple:
        raise NotImplementedError

    def _embed(self, payload: tuple, i: int, j: int):
        raise NotImplementedError

    def _identity(self, j: int) -> tuple:
        raise NotImplementedError

    def _check_payload(self, i: int, j: int, payload: tuple) -> None:
        raise NotImplementedError

    def endo_generators(self, j: int) -> tuple[Morphism, ...]:
        return ()

    def step_reps(self, j: int) -> tuple[Morphism, ...]:
        """Representatives of the orbits of C(j+1, j+1) acting on C(j, j+1) from the left."""
        return ()

    def split_step(self, t: Morphism) -> tuple[Morphism, Morphism]:
        """Write a one-step morphism as ``g ∘ r`` with ``r`` in :meth:`step_reps`."""
        raise NotImplementedError

    def factor_last(self, phi: Morphism) -> tuple[Morphism, Morphism]:
        """Write ``phi: i -> m`` (i < m) as ``t ∘ psi`` with ``t`` one-step into m."""
        raise NotImplementedError

    def right_canon(self, mu: Morphism) -> tuple[Morphism, Morphism]:
        """Write ``mu: i -> j`` as ``rep ∘ h`` with ``h`` invertible in C(i, i) and
        ``rep`` the canonical member of the right orbit of ``mu``."""
        raise NotImplementedError

    def _length(self, g: Morphism) -> int:
        raise NotImplementedError

    # -- generic layer --------------------------------------------------------

    def mor(self, source: int, target: int, payload) -> Morphism:
        """Build and validate a morphism from a payload."""
        payload = self._normalize_payload(source, target, payload)
        self._check_payload(source, target, payload)
        return Morphism(source, target, payload)

    def _normalize_payload(self, i, j, payload):
        return _freeze(payload)

    def identity(self, j: int) -> Morphism:
        return Morphism(j, j, self._identity(j))

    def is_identity(self, g: Morphism) -> bool:
        return g.source == g.target and g.payload == self._identity(g.source)

    @functools.lru_cache(maxsize=None)
    def hom_basis(self, i: int, j: int) -> tuple[Morphism, ...]:
        if i > j or i < 0:
            return ()
        size = self.count(i, j)
        budget = enumeration_budget()
        if size > budget:
            raise BudgetError(f"{self.name}: |C({i},{j})| = {size} exceeds budget {budget} (HOMCAT_BUDGET)")
        out = tuple(Morphism(i, j, p) for p in sorted(self._enumerate(i, j)))
        if len(out) != size:
            raise AssertionError(f"{self.name}: enumerated {len(out)} morphisms {i}->{j}, expected {size}")
        return out

    @functools.lru_cache(maxsize=None)
    def hom_index(self, i: int, j: int) -> dict:
        return {m: k for k, m in enumerate(self.hom_basis(i, j))}

    def compose(self, second: Morphism, first: Morphism) -> Morphism:
        if first.target != second.source:
            raise ValueError(f"cannot compose {second} after {first}")
        return Morphism(first.source, second.target,
                        self._compose(second.payload, first.payload, first.source, first.target, second.target))

    def embed(self, phi: Morphism) -> Morphism | None:
        """The prepend-a-point self-embedding; ``None`` stands for a zero map."""
        p = self._embed(phi.payload, phi.source, phi.target)
        return None if p is None else Morphism(phi.source + 1, phi.target + 1, p)

    def embed_power(self, phi: Morphism, a: int) -> Morphism | None:
        for _ in range(a):
            if phi is None:
                return None
            phi = self.embed(phi)
        return phi

    def group_order(self, j: int) -> int:
        return self.count(j, j)

    @functools.lru_cache(maxsize=None)
    def _gen_inverse(self, gamma: Morphism) -> Morphism:
        j = gamma.source
        ident = self.identity(j)
        for cand in self.endo_generators(j):
            if self.compose(gamma, cand) == ident:
                return cand
        raise AssertionError(f"generator {gamma} has no inverse among the generators")

    @functools.lru_cache(maxsize=1 << 16)
    def endo_word(self, g: Morphism) -> tuple[Morphism, ...]:
        """Generators whose successive application (left to right) gives ``g``."""
        word = []
        length = self._length(g)
        while length:
            for gamma in self.endo_generators(g.source):
                h = self.compose(g, self._gen_inverse(gamma))
                lh = self._length(h)
                if lh < length:
                    word.append(gamma)
                    g, length = h, lh
                    break
            else:
                raise AssertionError(f"no descending generator for {g}")
        if not self.is_identity(g):
            raise AssertionError(f"length zero but not the identity: {g}")
        return tuple(word)

    def endo_inverse(self, g: Morphism) -> Morphism:
        out = self.identity(g.source)
        for gamma in self.endo_word(g):
            out = self.compose(out, self._gen_inverse(gamma))
        return out

    @functools.lru_cache(maxsize=1 << 18)
    def word(self, phi: Morphism) -> tuple[Morphism, ...]:
        """Generators (endomorphism generators and step representatives) whose
        successive application gives ``phi``."""
        if phi.source == phi.target:
            return self.endo_word(phi)
        t, psi = self.factor_last(phi)
        g, r = self.split_step(t)
        return self.word(psi) + (r,) + self.endo_word(g)

    def generators_from(self, j: int, window: int) -> tuple[Morphism, ...]:
        """All generators with source ``j`` and target inside the window."""
        gens = self.endo_generators(j)
        if j < window:
            gens = gens + self.step_reps(j)
        return gens

    def annihilator_generators(self, j: int, window: int) -> tuple[Morphism, ...]:
        """Morphisms out of ``j`` whose joint kernel is the J-annihilated part."""
        return self.step_reps(j) if j < window else ()

    @functools.lru_cache(maxsize=None)
    def right_reps(self, i: int, j: int) -> tuple[Morphism, ...]:
        return tuple(mu for mu in self.hom_basis(i, j) if self.right_canon(mu)[0] == mu)

    def jreps(self, j: int) -> tuple[Morphism, ...]:
        """Morphisms into ``j`` from lower objects whose images span the J-image at ``j``."""
        return self.right_reps(j - 1, j) if j >= 1 else ()

    def to_json(self) -> dict:
        raise NotImplementedError


def _freeze(x):
    if isinstance(x, (list, tuple)):
        return tuple(_freeze(y) for y in x)
    return x


# ---------------------------------------------------------------------------
# FI_G and OI_G
# ---------------------------------------------------------------------------


class _InjG(CategorySpec):
    """Injections [i] -> [j] decorated by a group G, payload ((f(r), g(r)), ...)."""

    ordered = False

    def __init__(self, group: FiniteGroup | None = None):
        self.group = group or trivial_group()
        self.e = self.group.identity

    def _key(self):
        return (self.group.table, self.group.identity)

    @property
    def name(self):
        base = "OI" if self.ordered else "FI"
        return base if self.group.is_trivial() else f"{base}_G[{self.group.name}]"

    def to_json(self):
        out = {"kind": self.kind}
        if not self.group.is_trivial():
            out["group"] = self.group.to_json()
        return out

    def _normalize_payload(self, i, j, payload):
        payload = _freeze(payload)
        if self.group.is_trivial() and all(not isinstance(x, tuple) for x in payload):
            payload = tuple((f, self.e) for f in payload)
        return payload

    def count(self, i, j):
        if i > j:
            return 0
        inj = math.comb(j, i) if self.ordered else math.perm(j, i)
        return inj * self.group.order ** i

    def _injections(self, i, j):
        src = range(1, j + 1)
        return itertools.combinations(src, i) if self.ordered else itertools.permutations(src, i)

    def _enumerate(self, i, j):
        G = self.group.order
        for f in self._injections(i, j):
            for g in itertools.product(range(G), repeat=i):
                yield tuple(zip(f, g))

    def _check_payload(self, i, j, p):
        if len(p) != i:
            raise ValueError(f"payload length {len(p)} != source {i}")
        f = [x for x, _ in p]
        if any(not 1 <= x <= j for x in f) or len(set(f)) != i:
            raise ValueError(f"{f} is not an injection [{i}] -> [{j}]")
        if self.ordered and f != sorted(f):
            raise ValueError(f"{f} is not increasing")
        if any(not 0 <= g < self.group.order for _, g in p):
            raise ValueError("decoration outside the group")

    def _compose(self, second, first, i, j, k):
        mul = self.group.table
        return tuple((second[f1 - 1][0], mul[second[f1 - 1][1]][g1]) for f1, g1 in first)

    def _embed(self, p, i, j):
        return ((1, self.e),) + tuple((f + 1, g) for f, g in p)

    def _identity(self, j):
        return tuple((r, self.e) for r in range(1, j + 1))

    def _length(self, g):
        f = [x for x, _ in g.payload]
        return _inversions(f) + sum(1 for _, c in g.payload if c != self.e)

    @functools.lru_cache(maxsize=None)
    def endo_generators(self, j):
        e = self.e
        gens = []
        if not self.ordered:
            for k in range(1, j):
                f = list(range(1, j + 1))
                f[k - 1], f[k] = f[k], f[k - 1]
                gens.append(Morphism(j, j, tuple((x, e) for x in f)))
        for k in range(1, j + 1):
            for h in self.group.elements():
                if h != e:
                    gens.append(Morphism(j, j, tuple((r, h if r == k else e) for r in range(1, j + 1))))
        return tuple(gens)

    @functools.lru_cache(maxsize=None)
    def step_reps(self, j):
        e = self.e
        if not self.ordered:
            return (Morphism(j, j + 1, tuple((r, e) for r in range(1, j + 1))),)
        return tuple(Morphism(j, j + 1, tuple((x, e) for x in f))
                     for f in itertools.combinations(range(1, j + 2), j))

    def split_step(self, t):
        j = t.source
        f = [x for x, _ in t.payload]
        c = [g for _, g in t.payload]
        (p,) = set(range(1, j + 2)) - set(f)
        e = self.e
        if not self.ordered:
            sigma = f + [p]
            g = Morphism(j + 1, j + 1, tuple(zip(sigma, c + [e])))
            r = Morphism(j, j + 1, tuple((x, e) for x in range(1, j + 1)))
            return g, r
        dec = [e] * (j + 1)
        for x, gx in zip(f, c):
            dec[x - 1] = gx
        g = Morphism(j + 1, j + 1, tuple((x, dec[x - 1]) for x in range(1, j + 2)))
        r = Morphism(j, j + 1, tuple((x, e) for x in f))
        return g, r

    def factor_last(self, phi):
        i, m = phi.source, phi.target
        f = [x for x, _ in phi.payload]
        p = max(set(range(1, m + 1)) - set(f))
        t = Morphism(m - 1, m, tuple((r if r < p else r + 1, self.e) for r in range(1, m)))
        psi = Morphism(i, m - 1, tuple((x if x < p else x - 1, g) for x, g in phi.payload))
        return t, psi

    def right_canon(self, mu):
        i = mu.source
        f = [x for x, _ in mu.payload]
        c = [g for _, g in mu.payload]
        e = self.e
        if self.ordered:
            rep = Morphism(i, mu.target, tuple((x, e) for x in f))
            h = Morphism(i, i, tuple((r, c[r - 1]) for r in range(1, i + 1)))
            return rep, h
        img = sorted(f)
        rank = {x: k + 1 for k, x in enumerate(img)}
        rep = Morphism(i, mu.target, tuple((x, e) for x in img))
        h = Morphism(i, i, tuple((rank[x], g) for x, g in zip(f, c)))
        return rep, h


class FI_G(_InjG):
    kind = "FI_G"
    ordered = False


class OI_G(_InjG):
    kind = "OI_G"
    ordered = True


# ---------------------------------------------------------------------------
# FI_d and OI_d
# ---------------------------------------------------------------------------


class _InjD(CategorySpec):
    """Injections with the complement of the image colored by 1..d,
    payload (f tuple, colors of the complement in increasing order)."""

    ordered = False

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("d must be at least 1")
        self.d = int(d)

    def _key(self):
        return (self.d,)

    @property
    def name(self):
        return f"{'OI' if self.ordered else 'FI'}_{self.d}"

    def to_json(self):
        return {"kind": self.kind, "d": self.d}

    def count(self, i, j):
        if i > j:
            return 0
        inj = math.comb(j, i) if self.ordered else math.perm(j, i)
        return inj * self.d ** (j - i)

    def _enumerate(self, i, j):
        src = range(1, j + 1)
        injs = itertools.combinations(src, i) if self.ordered else itertools.permutations(src, i)
        for f in injs:
            for cols in itertools.product(range(1, self.d + 1), repeat=j - i):
                yield (tuple(f), tuple(cols))

    def _check_payload(self, i, j, p):
        f, cols = p
        if len(f) != i or any(not 1 <= x <= j for x in f) or len(set(f)) != i:
            raise ValueError(f"{f} is not an injection [{i}] -> [{j}]")
        if self.ordered and list(f) != sorted(f):
            raise ValueError(f"{f} is not increasing")
        if len(cols) != j - i or any(not 1 <= c <= self.d for c in cols):
            raise ValueError(f"bad coloring {cols}")

    def _compose(self, second, first, i, j, k):
        f1, d1 = first
        f2, d2 = second
        f3 = tuple(f2[x - 1] for x in f1)
        comp1 = [y for y in range(1, j + 1) if y not in set(f1)]
        col1 = dict(zip(comp1, d1))
        comp2 = [x for x in range(1, k + 1) if x not in set(f2)]
        col2 = dict(zip(comp2, d2))
        inv2 = {x: y for y, x in enumerate(f2, start=1)}
        img3 = set(f3)
        cols = tuple(col1[inv2[x]] if x in inv2 else col2[x] for x in range(1, k + 1) if x not in img3)
        return (f3, cols)

    def _embed(self, p, i, j):
        f, cols = p
        return ((1,) + tuple(x + 1 for x in f), cols)

    def _identity(self, j):
        return (tuple(range(1, j + 1)), ())

    def _length(self, g):
        return _inversions(g.payload[0])

    @functools.lru_cache(maxsize=None)
    def endo_generators(self, j):
        if self.ordered:
            return ()
        gens = []
        for k in range(1, j):
            f = list(range(1, j + 1))
            f[k - 1], f[k] = f[k], f[k - 1]
            gens.append(Morphism(j, j, (tuple(f), ())))
        return tuple(gens)

    @functools.lru_cache(maxsize=None)
    def step_reps(self, j):
        if not self.ordered:
            std = tuple(range(1, j + 1))
            return tuple(Morphism(j, j + 1, (std, (c,))) for c in range(1, self.d + 1))
        return tuple(sorted(Morphism(j, j + 1, (tuple(f), (c,)))
                            for f in itertools.combinations(range(1, j + 2), j)
                            for c in range(1, self.d + 1)))

    def split_step(self, t):
        j = t.source
        f, (col,) = t.payload
        if self.ordered:
            return self.identity(j + 1), t
        (p,) = set(range(1, j + 2)) - set(f)
        g = Morphism(j + 1, j + 1, (tuple(f) + (p,), ()))
        r = Morphism(j, j + 1, (tuple(range(1, j + 1)), (col,)))
        return g, r

    def factor_last(self, phi):
        i, m = phi.source, phi.target
        f, cols = phi.payload
        comp = [x for x in range(1, m + 1) if x not in set(f)]
        color = dict(zip(comp, cols))
        p = max(comp)
        tmap = [r if r < p else r + 1 for r in range(1, m)]
        t = Morphism(m - 1, m, (tuple(tmap), (color[p],)))
        fpsi = tuple(x if x < p else x - 1 for x in f)
        img = set(fpsi)
        cpsi = tuple(color[tmap[q - 1]] for q in range(1, m) if q not in img)
        return t, Morphism(i, m - 1, (fpsi, cpsi))

    def right_canon(self, mu):
        i = mu.source
        f, cols = mu.payload
        if self.ordered:
            return mu, self.identity(i)
        img = tuple(sorted(f))
        rank = {x: k + 1 for k, x in enumerate(img)}
        return Morphism(i, mu.target, (img, cols)), Morphism(i, i, (tuple(rank[x] for x in f), ()))


class FI_d(_InjD):
    kind = "FI_d"
    ordered = False


class OI_d(_InjD):
    kind = "OI_d"
    ordered = True


# ---------------------------------------------------------------------------
# VI
# ---------------------------------------------------------------------------


class VI(CategorySpec):
    """Injective linear maps F_q^i -> F_q^j, payload = tuple of i image vectors."""

    kind = "VI"

    def __init__(self, q: int | FieldTables = 2):
        self.F = q if isinstance(q, FieldTables) else FieldTables(q)
        self.q = self.F.q

    def _key(self):
        return (self.F.q, self.F.add, self.F.mul)

    @property
    def name(self):
        return f"VI_{self.q}"

    def to_json(self):
        return {"kind": "VI", "q": self.q}

    # small linear algebra over the table field

    def _add(self, u, v):
        A = self.F.add
        return tuple(A[a][b] for a, b in zip(u, v))

    def _smul(self, c, v):
        M = self.F.mul
        return tuple(M[c][a] for a in v)

    def _lincomb(self, coeffs, vecs, n):
        out = (0,) * n
        for c, v in zip(coeffs, vecs):
            if c:
                out = self._add(out, self._smul(c, v))
        return out

    def _rref_rows(self, rows, n):
        """Row reduced echelon form of a list of length-n vectors; returns (rows, pivots)."""
        F = self.F
        rows = [list(r) for r in rows]
        piv = []
        r = 0
        for c in range(n):
            k = next((k for k in range(r, len(rows)) if rows[k][c]), None)
            if k is None:
                continue
            rows[r], rows[k] = rows[k], rows[r]
            inv = F.inv[rows[r][c]]
            rows[r] = [F.mul[inv][x] for x in rows[r]]
            for k2 in range(len(rows)):
                if k2 != r and rows[k2][c]:
                    lam = F.neg[rows[k2][c]]
                    rows[k2] = [F.add[a][F.mul[lam][b]] for a, b in zip(rows[k2], rows[r])]
            piv.append(c)
            r += 1
        return [tuple(x) for x in rows[:r]], piv

    def _rank(self, vecs, n):
        return len(self._rref_rows(vecs, n)[1])

    def count(self, i, j):
        if i > j:
            return 0
        out = 1
        for t in range(i):
            out *= self.q ** j - self.q ** t
        return out

    def _enumerate(self, i, j):
        allv = list(itertools.product(range(self.q), repeat=j))

        def rec(prefix, span):
            if len(prefix) == i:
                yield tuple(prefix)
                return
            for v in allv:
                if v not in span:
                    new = {self._add(s, self._smul(c, v)) for s in span for c in range(self.q)}
                    yield from rec(prefix + [v], new)

        yield from rec([], {(0,) * j})

    def _check_payload(self, i, j, p):
        if len(p) != i or any(len(v) != j for v in p):
            raise ValueError("VI payload has the wrong shape")
        if any(not 0 <= a < self.q for v in p for a in v):
            raise ValueError("VI entries outside the field")
        if self._rank(p, j) != i:
            raise ValueError("VI image vectors are not independent")

    def _compose(self, second, first, i, j, k):
        return tuple(self._lincomb(b, second, k) for b in first)

    def _embed(self, p, i, j):
        return ((1,) + (0,) * j,) + tuple((0,) + v for v in p)

    def _identity(self, j):
        return tuple(tuple(1 if a == b else 0 for a in range(j)) for b in range(j))

    def _elem(self, j, a, b, lam):
        """Transvection I + lam*E_ab (a != b) or diagonal scaling (a == b), as columns."""
        cols = [list(v) for v in self._identity(j)]
        if a == b:
            cols[a][a] = lam
        else:
            cols[b][a] = lam
        return Morphism(j, j, tuple(tuple(c) for c in cols))

    @functools.lru_cache(maxsize=None)
    def endo_generators(self, j):
        gens = []
        for a in range(j):
            for b in range(j):
                if a != b:
                    for lam in range(1, self.q):
                        gens.append(self._elem(j, a, b, lam))
        for a in range(j):
            for lam in range(2, self.q):
                gens.append(self._elem(j, a, a, lam))
        return tuple(gens)

    def _length(self, g):
        return 0 if self.is_identity(g) else 1

    @functools.lru_cache(maxsize=1 << 16)
    def endo_word(self, g):
        # row-reduce g to the identity with elementary row operations e_k...e_1 g = I,
        # so g = e_1^-1 ... e_k^-1 and e_k^-1 is applied first
        F = self.F
        j = g.source
        rows = [[g.payload[c][r] for c in range(j)] for r in range(j)]
        ops = []

        def apply(a, b, lam):
            if a == b:
                rows[a] = [F.mul[lam][x] for x in rows[a]]
                ops.append(self._elem(j, a, a, F.inv[lam]))
            else:
                rows[a] = [F.add[x][F.mul[lam][y]] for x, y in zip(rows[a], rows[b])]
                ops.append(self._elem(j, a, b, F.neg[lam]))

        for c in range(j):
            if rows[c][c] == 0:
                k = next(k for k in range(c + 1, j) if rows[k][c])
                apply(c, k, 1)
            if rows[c][c] != 1:
                apply(c, c, F.inv[rows[c][c]])
            for k in range(j):
                if k != c and rows[k][c]:
                    apply(k, c, F.neg[rows[k][c]])
        return tuple(reversed(ops))

    @functools.lru_cache(maxsize=None)
    def step_reps(self, j):
        return (Morphism(j, j + 1, tuple(tuple(1 if a == b else 0 for a in range(j + 1)) for b in range(j))),)

    def _extend(self, vecs, n, size):
        vecs = list(vecs)
        for p in range(n):
            if len(vecs) == size:
                break
            e = tuple(1 if a == p else 0 for a in range(n))
            if self._rank(vecs + [e], n) > len(vecs):
                vecs.append(e)
        return tuple(vecs)

    def split_step(self, t):
        j = t.source
        g = Morphism(j + 1, j + 1, self._extend(t.payload, j + 1, j + 1))
        return g, self.step_reps(j)[0]

    def factor_last(self, phi):
        i, m = phi.source, phi.target
        cols = self._extend(phi.payload, m, m - 1)
        t = Morphism(m - 1, m, cols)
        psi = Morphism(i, m - 1, tuple(tuple(1 if a == b else 0 for a in range(m - 1)) for b in range(i)))
        return t, psi

    def right_canon(self, mu):
        i, j = mu.source, mu.target
        rows, piv = self._rref_rows(mu.payload, j)
        rep = Morphism(i, j, tuple(rows))
        h = Morphism(i, i, tuple(tuple(v[p] for p in piv) for v in mu.payload))
        return rep, h


# ---------------------------------------------------------------------------
# FS_G^op and OS_G^op
# ---------------------------------------------------------------------------


class _SurjOp(CategorySpec):
    """Opposites of decorated surjections.  Internal object o is the set [o+1];
    a morphism x -> y stores the surjection [y] -> [x] as ((f(r), c(r)), ...)."""

    ordered = False

    def __init__(self, group: FiniteGroup | None = None):
        self.group = group or trivial_group()
        self.e = self.group.identity

    def _key(self):
        return (self.group.table, self.group.identity)

    @property
    def name(self):
        base = "OS_op" if self.ordered else "FS_op"
        return base if self.group.is_trivial() else f"{base}[{self.group.name}]"

    def to_json(self):
        out = {"kind": self.kind}
        if not self.group.is_trivial():
            out["group"] = self.group.to_json()
        return out

    def _normalize_payload(self, i, j, payload):
        payload = _freeze(payload)
        if self.group.is_trivial() and all(not isinstance(x, tuple) for x in payload):
            payload = tuple((f, self.e) for f in payload)
        return payload

    def count(self, i, j):
        if i > j:
            return 0
        x, y = i + 1, j + 1
        surj = math.comb(y - 1, x - 1) if self.ordered else math.factorial(x) * _stirling2(y, x)
        return surj * self.group.order ** y

    def _surjections(self, x, y):
        if self.ordered:
            for cuts in itertools.combinations(range(1, y), x - 1):
                bounds = (0,) + cuts + (y,)
                yield tuple(b + 1 for b in range(x) for _ in range(bounds[b], bounds[b + 1]))
        else:
            for f in itertools.product(range(1, x + 1), repeat=y):
                if len(set(f)) == x:
                    yield f

    def _enumerate(self, i, j):
        G = self.group.order
        for f in self._surjections(i + 1, j + 1):
            for c in itertools.product(range(G), repeat=j + 1):
                yield tuple(zip(f, c))

    def _check_payload(self, i, j, p):
        x, y = i + 1, j + 1
        if len(p) != y:
            raise ValueError(f"payload length {len(p)} != {y}")
        f = [a for a, _ in p]
        if set(f) != set(range(1, x + 1)):
            raise ValueError(f"{f} is not a surjection onto [{x}]")
        if self.ordered and f != sorted(f):
            raise ValueError(f"{f} is not monotone")
        if any(not 0 <= c < self.group.order for _, c in p):
            raise ValueError("decoration outside the group")

    def _compose(self, second, first, i, j, k):
        # second∘first in the opposite category is first_FS ∘ second_FS
        mul = self.group.table
        return tuple((first[f2 - 1][0], mul[first[f2 - 1][1]][c2]) for f2, c2 in second)

    def _embed(self, p, i, j):
        return ((1, self.e),) + tuple((f + 1, c) for f, c in p)

    def _identity(self, j):
        return tuple((r, self.e) for r in range(1, j + 2))

    def _length(self, g):
        f = [x for x, _ in g.payload]
        return _inversions(f) + sum(1 for _, c in g.payload if c != self.e)

    @functools.lru_cache(maxsize=None)
    def endo_generators(self, j):
        e = self.e
        n = j + 1
        gens = []
        if not self.ordered:
            for k in range(1, n):
                f = list(range(1, n + 1))
                f[k - 1], f[k] = f[k], f[k - 1]
                gens.append(Morphism(j, j, tuple((x, e) for x in f)))
        for k in range(1, n + 1):
            for h in self.group.elements():
                if h != e:
                    gens.append(Morphism(j, j, tuple((r, h if r == k else e) for r in range(1, n + 1))))
        return tuple(gens)

    @functools.lru_cache(maxsize=None)
    def step_reps(self, j):
        n = j + 1  # surjections [n+1] -> [n] doubling the point a
        e = self.e
        return tuple(sorted(Morphism(j, j + 1, tuple((k if k <= a else k - 1, e) for k in range(1, n + 2)))
                            for a in range(1, n + 1)))

    def split_step(self, t):
        j = t.source
        n = j + 1
        f = [x for x, _ in t.payload]
        c = [g for _, g in t.payload]
        a = next(x for x in range(1, n + 1) if f.count(x) == 2)
        r = next(s for s in self.step_reps(j) if [x for x, _ in s.payload].count(a) == 2)
        if self.ordered:
            g = Morphism(j + 1, j + 1, tuple((k, c[k - 1]) for k in range(1, n + 2)))
            return g, r
        sigma = []
        seen = False
        for x in f:
            if x < a:
                sigma.append(x)
            elif x > a:
                sigma.append(x + 1)
            else:
                sigma.append(a + 1 if seen else a)
                seen = True
        g = Morphism(j + 1, j + 1, tuple(zip(sigma, c)))
        return g, r

    def factor_last(self, phi):
        i, m = phi.source, phi.target
        f = [x for x, _ in phi.payload]
        c = [g for _, g in phi.payload]
        if self.ordered:
            a = next(k for k in range(1, len(f)) if f[k - 1] == f[k])
            b = a + 1
        else:
            first = {}
            for k, x in enumerate(f, start=1):
                if x in first:
                    a, b = first[x], k
                    break
                first[x] = k
        G = self.group
        y = m + 1
        pi = {r: (r if r < b else r - 1) for r in range(1, y + 1) if r != b}
        ft = [pi[r] if r != b else pi[a] for r in range(1, y + 1)]
        ct = [self.e] * y
        ct[b - 1] = G.mul(G.inv(c[a - 1]), c[b - 1])
        t = Morphism(m - 1, m, tuple(zip(ft, ct)))
        psi_f = [0] * (y - 1)
        psi_c = [0] * (y - 1)
        for r in range(1, y + 1):
            if r != b:
                psi_f[pi[r] - 1] = f[r - 1]
                psi_c[pi[r] - 1] = c[r - 1]
        return t, Morphism(i, m - 1, tuple(zip(psi_f, psi_c)))

    def right_canon(self, mu):
        i = mu.source
        G = self.group
        f = [x for x, _ in mu.payload]
        c = [g for _, g in mu.payload]
        firsts = {}
        for k, x in enumerate(f):
            firsts.setdefault(x, k)
        if self.ordered:
            d = {x: c[k] for x, k in firsts.items()}
            rep = Morphism(i, mu.target, tuple((x, G.mul(G.inv(d[x]), cx)) for x, cx in zip(f, c)))
            h = Morphism(i, i, tuple((x, d[x]) for x in range(1, i + 2)))
            return rep, h
        order = sorted(firsts, key=firsts.get)
        relabel = {x: b for b, x in enumerate(order, start=1)}
        d = {relabel[x]: c[k] for x, k in firsts.items()}
        rep = Morphism(i, mu.target, tuple((relabel[x], G.mul(G.inv(d[relabel[x]]), cx)) for x, cx in zip(f, c)))
        h = Morphism(i, i, tuple((order[b - 1], d[b]) for b in range(1, i + 2)))
        return rep, h


class FSG_op(_SurjOp):
    kind = "FSG_op"
    ordered = False


class OSG_op(_SurjOp):
    kind = "OSG_op"
    ordered = True


# ---------------------------------------------------------------------------
# Star quiver fixture
# ---------------------------------------------------------------------------


class StarQuiver(CategorySpec):
    """Object 0 with one arrow to every other object and nothing else.

    Used only as a negative control: it has no self-embedding with the
    required properties, and its placeholder sends every arrow to zero.
    """

    kind = "STAR"

    def _key(self):
        return ()

    def to_json(self):
        return {"kind": "STAR"}

    def count(self, i, j):
        if i == j or (i == 0 and j > 0):
            return 1
        return 0

    def _enumerate(self, i, j):
        if i == j:
            yield ("id",)
        elif i == 0 and j > 0:
            yield ("arrow",)

    def _check_payload(self, i, j, p):
        if p not in set(self._enumerate(i, j)):
            raise ValueError(f"no morphism {p} from {i} to {j}")

    def _compose(self, second, first, i, j, k):
        if second == ("id",):
            return first
        if first == ("id",):
            return second
        raise ValueError("arrows of the star quiver do not compose")

    def _embed(self, p, i, j):
        return ("id",) if p == ("id",) else None

    def _identity(self, j):
        return ("id",)

    def _length(self, g):
        return 0

    def word(self, phi):
        return () if phi.payload == ("id",) else (phi,)

    def generators_from(self, j, window):
        if j == 0:
            return tuple(Morphism(0, k, ("arrow",)) for k in range(1, window + 1))
        return ()

    def annihilator_generators(self, j, window):
        return self.generators_from(j, window)

    def right_canon(self, mu):
        return mu, self.identity(mu.source)

    def jreps(self, j):
        return (Morphism(0, j, ("arrow",)),) if j >= 1 else ()

    def factor_last(self, phi):
        raise ValueError("the star quiver is not generated in degree one")


# ---------------------------------------------------------------------------
# construction helpers
# ---------------------------------------------------------------------------


def FI(group: FiniteGroup | None = None) -> FI_G:
    return FI_G(group)


def OI(group: FiniteGroup | None = None) -> OI_G:
    return OI_G(group)


def FS_op(group: FiniteGroup | None = None) -> FSG_op:
    return FSG_op(group)


def OS_op(group: FiniteGroup | None = None) -> OSG_op:
    return OSG_op(group)


def category_from_json(obj: dict) -> CategorySpec:
    """Parse a category descriptor such as ``{"kind": "FI_G", "group": {"cyclic": 2}}``."""
    from .groups import group_from_json

    if isinstance(obj, str):
        obj = {"kind": obj}
    kind = obj.get("kind")
    aliases = {"FI": "FI_G", "OI": "OI_G", "FS_op": "FSG_op", "OS_op": "OSG_op", "FS^op": "FSG_op", "OS^op": "OSG_op"}
    kind = aliases.get(kind, kind)
    if kind in ("FI_G", "OI_G", "FSG_op", "OSG_op"):
        group = group_from_json(obj.get("group"))
        return {"FI_G": FI_G, "OI_G": OI_G, "FSG_op": FSG_op, "OSG_op": OSG_op}[kind](group)
    if kind in ("FI_d", "OI_d"):
        if "d" not in obj:
            raise ValueError(f"{kind} needs a color count d")
        return (FI_d if kind == "FI_d" else OI_d)(int(obj["d"]))
    if kind == "VI":
        q = obj.get("q", 2)
        if "add" in obj or "mul" in obj:
            return VI(FieldTables(q, obj.get("add"), obj.get("mul")))
        return VI(int(q))
    if kind == "STAR":
        return StarQuiver()
    raise ValueError(f"unknown category kind {obj.get('kind')!r}")
