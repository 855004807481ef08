"""Finite groups given by Cayley tables, and finite fields given by tables."""

from __future__ import annotations

import itertools
from typing import Sequence


class FiniteGroup:
    """A finite group on the elements ``0..n-1`` with an explicit Cayley table.

    ``table[a][b]`` is the product ``a*b``.  The axioms are checked on
    construction, so a ``FiniteGroup`` in hand is always a group.
    """

    def __init__(self, table: Sequence[Sequence[int]], identity: int | None = None, name: str | None = None):
        t = tuple(tuple(int(x) for x in row) for row in table)
        n = len(t)
        if n == 0 or any(len(row) != n for row in t):
            raise ValueError("Cayley table must be a non-empty square")
        if any(not 0 <= x < n for row in t for x in row):
            raise ValueError("Cayley table entries out of range")
        if identity is None:
            cands = [e for e in range(n) if all(t[e][a] == a and t[a][e] == a for a in range(n))]
            if not cands:
                raise ValueError("Cayley table has no identity")
            identity = cands[0]
        e = int(identity)
        if any(t[e][a] != a or t[a][e] != a for a in range(n)):
            raise ValueError(f"element {e} is not a two-sided identity")
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError(f"Cayley table is not associative at ({a},{b},{c})")
        inv = []
        for a in range(n):
            cands = [b for b in range(n) if t[a][b] == e]
            if len(cands) != 1 or t[cands[0]][a] != e:
                raise ValueError(f"element {a} has no two-sided inverse")
            inv.append(cands[0])
        self.table = t
        self.identity = e
        self._inv = tuple(inv)
        self.name = name or f"table{n}"

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def is_trivial(self) -> bool:
        return len(self.table) == 1

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and other.table == self.table and other.identity == self.identity

    def __hash__(self):
        return hash((self.table, self.identity))

    def __repr__(self):
        return f"FiniteGroup({self.name})"

    def to_json(self):
        if self.name.startswith("cyclic:"):
            return {"cyclic": int(self.name.split(":")[1])}
        if self.name == "s3":
            return "s3"
        return {"table": [list(r) for r in self.table], "identity": self.identity}


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], 0, name=f"cyclic:{n}")


def trivial_group() -> FiniteGroup:
    return cyclic(1)


def symmetric3() -> FiniteGroup:
    perms = sorted(itertools.permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    table = [[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]
    return FiniteGroup(table, index[(0, 1, 2)], name="s3")


def group_from_json(obj) -> FiniteGroup:
    """Parse ``{"cyclic": n}``, ``"s3"``, ``"trivial"`` or ``{"table": [...], "identity": e}``."""
    if obj is None or obj == "trivial":
        return trivial_group()
    if obj == "s3":
        return symmetric3()
    if isinstance(obj, dict):
        if "cyclic" in obj:
            return cyclic(int(obj["cyclic"]))
        if "table" in obj:
            return FiniteGroup(obj["table"], obj.get("identity"))
    raise ValueError(f"unrecognised group descriptor {obj!r}")


class FieldTables:
    """A finite field F_q on residues ``0..q-1`` with 0 and 1 as identities."""

    def __init__(self, q: int, add: Sequence[Sequence[int]] | None = None, mul: Sequence[Sequence[int]] | None = None):
        q = int(q)
        if q < 2:
            raise ValueError("field order must be at least 2")
        if add is None or mul is None:
            if not _is_prime(q):
                raise ValueError(f"q={q} is not prime; supply explicit addition and multiplication tables")
            add = [[(a + b) % q for b in range(q)] for a in range(q)]
            mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        self.q = q
        self.add = tuple(tuple(int(x) for x in r) for r in add)
        self.mul = tuple(tuple(int(x) for x in r) for r in mul)
        self._check()
        self.neg = tuple(next(b for b in range(q) if self.add[a][b] == 0) for a in range(q))
        self.inv = tuple(0 if a == 0 else next(b for b in range(q) if self.mul[a][b] == 1) for a in range(q))

    def _check(self):
        q, A, M = self.q, self.add, self.mul
        if len(A) != q or len(M) != q or any(len(r) != q for r in A + M):
            raise ValueError("field tables must be q x q")
        FiniteGroup(A, 0)
        units = list(range(1, q))
        idx = {u: k for k, u in enumerate(units)}
        if any(M[a][b] == 0 for a in units for b in units):
            raise ValueError("field tables have zero divisors")
        FiniteGroup([[idx[M[a][b]] for b in units] for a in units], 0)
        for a, b, c in itertools.product(range(q), repeat=3):
            if M[a][A[b][c]] != A[M[a][b]][M[a][c]]:
                raise ValueError("field tables are not distributive")
            if M[a][b] != M[b][a]:
                raise ValueError("field multiplication is not commutative")

    def __eq__(self, other):
        return isinstance(other, FieldTables) and (other.q, other.add, other.mul) == (self.q, self.add, self.mul)

    def __hash__(self):
        return hash((self.q, self.add, self.mul))

    def __repr__(self):
        return f"FieldTables(q={self.q})"


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))
