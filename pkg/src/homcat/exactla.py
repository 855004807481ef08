"""Exact linear algebra over Q and prime fields.

Matrices are immutable wrappers around python-flint's ``fmpq_mat`` (for Q)
and ``nmod_mat`` (for F_p).  Entries handed back to callers are
``fractions.Fraction`` or plain ``int`` residues.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import flint


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        p = int(p)
        if p != 0 and not _is_prime(p):
            raise ValueError(f"field characteristic {p} is not prime")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    def __reduce__(self):
        return (Field, (self.p,))

    @property
    def char(self) -> int:
        return self.p

    def __call__(self, x):
        """Canonical element: reduced Fraction for Q, residue in [0, p) for F_p."""
        if self.p == 0:
            if isinstance(x, flint.fmpq):
                return Fraction(int(x.p), int(x.q))
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def _flint(self, x):
        if self.p == 0:
            if isinstance(x, Fraction):
                return flint.fmpq(x.numerator, x.denominator)
            if isinstance(x, (int, flint.fmpz)):
                return x
            return flint.fmpq(x) if not isinstance(x, flint.fmpq) else x
        return self(x) if not isinstance(x, flint.nmod) else int(x)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p == 0 else f"F_{self.p}"

    def to_json(self):
        return "Q" if self.p == 0 else {"Fp": self.p}


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# above this many indices, row/column selection copies entries instead of
# multiplying by a 0/1 selection matrix
_GATHER_CUTOFF = 16


class Mat:
    """An immutable matrix over a :class:`Field`."""

    __slots__ = ("field", "rows", "cols", "_m")

    def __init__(self, field: Field, rows: int, cols: int, entries: Sequence = ()):
        entries = list(entries)
        if entries and len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        if not entries:
            entries = [0] * (rows * cols)
        conv = [field._flint(x) for x in entries]
        if field.p == 0:
            m = flint.fmpq_mat(rows, cols, conv) if rows and cols else flint.fmpq_mat(rows, cols)
        else:
            m = flint.nmod_mat(rows, cols, conv, field.p) if rows and cols else flint.nmod_mat(rows, cols, field.p)
        self._set(field, rows, cols, m)

    def _set(self, field, rows, cols, m):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_m", m)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def _wrap(cls, field: Field, m) -> "Mat":
        self = object.__new__(cls)
        self._set(field, m.nrows(), m.ncols(), m)
        return self

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        if field.p == 0:
            return cls._wrap(field, flint.fmpq_mat(rows, cols))
        return cls._wrap(field, flint.nmod_mat(rows, cols, field.p))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        return cls.from_sparse(field, n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, field: Field, nrows: int, columns: Sequence[Sequence]) -> "Mat":
        return cls.from_rows(field, [list(c) for c in columns], nrows).T if columns else cls.zeros(field, nrows, 0)

    @classmethod
    def from_sparse(cls, field: Field, rows: int, cols: int, items) -> "Mat":
        """Build from ``{(i, j): value}`` or an iterable of ``(i, j, value)``."""
        if isinstance(items, dict):
            items = ((i, j, v) for (i, j), v in items.items())
        if rows == 0 or cols == 0:
            return cls.zeros(field, rows, cols)
        m = cls.zeros(field, rows, cols)._m
        for i, j, v in items:
            m[i, j] = field._flint(v)
        return cls._wrap(field, m)

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int):
        return self.field(self._m[i, j])

    def tolist(self) -> list[list]:
        if self.rows == 0:
            return []
        if self.cols == 0:
            return [[] for _ in range(self.rows)]
        f = self.field
        return [[f(x) for x in row] for row in self._m.tolist()]

    def _rawrows(self) -> list[list]:
        if self.rows == 0:
            return []
        if self.cols == 0:
            return [[] for _ in range(self.rows)]
        return self._m.tolist()

    def entries(self) -> list:
        return [x for row in self.tolist() for x in row]

    def column(self, j: int) -> list:
        return [self.entry(i, j) for i in range(self.rows)]

    # -- algebra ------------------------------------------------------------

    def _check(self, other: "Mat"):
        if not isinstance(other, Mat):
            raise TypeError("expected Mat")
        if other.field != self.field:
            raise ValueError(f"mixed fields {self.field} and {other.field}")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        return Mat._wrap(self.field, self._m * other._m)

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch in +")
        if self.rows == 0 or self.cols == 0:
            return self
        return Mat._wrap(self.field, self._m + other._m)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __neg__(self) -> "Mat":
        if self.rows == 0 or self.cols == 0:
            return self
        return Mat._wrap(self.field, -self._m)

    def scale(self, c) -> "Mat":
        if self.rows == 0 or self.cols == 0:
            return self
        c = self.field(c)
        if self.field.p == 0:
            return Mat._wrap(self.field, self._m * flint.fmpq(c.numerator, c.denominator))
        return Mat._wrap(self.field, self._m * c)

    @property
    def T(self) -> "Mat":
        if self.rows == 0 or self.cols == 0:
            return Mat.zeros(self.field, self.cols, self.rows)
        return Mat._wrap(self.field, self._m.transpose())

    def transpose(self) -> "Mat":
        return self.T

    def is_zero(self) -> bool:
        if self.rows == 0 or self.cols == 0:
            return True
        return self._m == Mat.zeros(self.field, self.rows, self.cols)._m

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        if self.field != other.field or self.shape != other.shape:
            return False
        if self.rows == 0 or self.cols == 0:
            return True
        return bool(self._m == other._m)

    __hash__ = None

    def __repr__(self):
        return f"Mat({self.field}, {self.rows}x{self.cols}, {self.tolist()})"

    # -- slicing ------------------------------------------------------------

    def select_rows(self, idx: Sequence[int]) -> "Mat":
        idx = list(idx)
        if not idx or self.cols == 0 or self.rows == 0:
            return Mat.zeros(self.field, len(idx), self.cols)
        if len(idx) > _GATHER_CUTOFF:
            raw = self._rawrows()
            return _from_raw(self.field, [raw[i] for i in idx], self.cols)
        sel = Mat.from_sparse(self.field, len(idx), self.rows, [(r, i, 1) for r, i in enumerate(idx)])
        return sel @ self

    def select_cols(self, idx: Sequence[int]) -> "Mat":
        idx = list(idx)
        if not idx or self.cols == 0 or self.rows == 0:
            return Mat.zeros(self.field, self.rows, len(idx))
        if len(idx) > _GATHER_CUTOFF:
            raw = self._rawrows()
            return _from_raw(self.field, [[row[j] for j in idx] for row in raw], len(idx))
        sel = Mat.from_sparse(self.field, self.cols, len(idx), [(j, c, 1) for c, j in enumerate(idx)])
        return self @ sel

    # -- elimination --------------------------------------------------------

    def rref(self) -> tuple["Mat", tuple[int, ...]]:
        """Reduced row echelon form: returns the nonzero rows and pivot columns."""
        if self.rows == 0 or self.cols == 0:
            return Mat.zeros(self.field, 0, self.cols), ()
        r, rk = self._m.rref()
        raw = r.tolist()[:rk]
        pivots = []
        for row in raw:
            for j, x in enumerate(row):
                if x != 0:
                    pivots.append(j)
                    break
        return _from_raw(self.field, raw, self.cols), tuple(pivots)


def _from_raw(field: Field, raw: list[list], cols: int) -> Mat:
    rows = len(raw)
    if rows == 0 or cols == 0:
        return Mat.zeros(field, rows, cols)
    if field.p == 0:
        return Mat._wrap(field, flint.fmpq_mat(raw))
    return Mat._wrap(field, flint.nmod_mat([[int(x) for x in r] for r in raw], field.p))


def hstack(mats: Sequence[Mat], rows: int | None = None, field: Field | None = None) -> Mat:
    mats = list(mats)
    if not mats:
        return Mat.zeros(field, rows or 0, 0)
    f = mats[0].field
    r = mats[0].rows
    if any(m.rows != r or m.field != f for m in mats):
        raise ValueError("hstack: row count or field mismatch")
    cols = sum(m.cols for m in mats)
    raws = [m._rawrows() for m in mats]
    out = [[x for raw in raws for x in raw[i]] for i in range(r)]
    return _from_raw(f, out, cols)


def vstack(mats: Sequence[Mat], cols: int | None = None, field: Field | None = None) -> Mat:
    mats = list(mats)
    if not mats:
        return Mat.zeros(field, 0, cols or 0)
    f = mats[0].field
    c = mats[0].cols
    if any(m.cols != c or m.field != f for m in mats):
        raise ValueError("vstack: column count or field mismatch")
    out = [row for m in mats for row in m._rawrows()]
    return _from_raw(f, out, c)


def block_diag(mats: Sequence[Mat], field: Field) -> Mat:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    items = []
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m._rawrows()):
            for j, x in enumerate(row):
                if x != 0:
                    items.append((r0 + i, c0 + j, x))
        r0 += m.rows
        c0 += m.cols
    return Mat.from_sparse(field, rows, cols, items)


# -- the kernel -------------------------------------------------------------


def rank(m: Mat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field.p == 0:
        # fraction-free integer rank is much faster than rational elimination
        return m._m.numer_denom()[0].rank()
    return m._m.rank()


def kernel_basis(m: Mat) -> Mat:
    """Columns spanning the right null space, normalized so the rows indexed
    by the free columns of ``m`` form an identity block."""
    n = m.cols
    if m.rows == 0 or n == 0:
        return Mat.identity(m.field, n)
    return _kernel_from_rref(*m.rref(), n)[0]


def _kernel_from_rref(r: Mat, piv, n: int) -> tuple[Mat, tuple[int, ...]]:
    pivset = set(piv)
    free = tuple(j for j in range(n) if j not in pivset)
    raw = r._rawrows()
    items = []
    for b, fcol in enumerate(free):
        items.append((fcol, b, 1))
        for k, p in enumerate(piv):
            x = raw[k][fcol]
            if x != 0:
                items.append((p, b, -x))
    return Mat.from_sparse(r.field, n, len(free), items), free


def kernel_with_pivots(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Kernel basis plus the rows where it carries an identity block."""
    n = m.cols
    if m.rows == 0 or n == 0:
        return Mat.identity(m.field, n), tuple(range(n))
    r, piv = m.rref()
    return _kernel_from_rref(r, piv, n)


def solve_preimage(m: Mat, target: Mat) -> Mat | None:
    """Some ``x`` with ``m @ x == target``, or ``None`` when no solution exists."""
    if target.rows != m.rows:
        raise ValueError("solve_preimage: row mismatch")
    m._check(target)
    n, k = m.cols, target.cols
    if k == 0:
        return Mat.zeros(m.field, n, 0)
    if m.rows == 0:
        return Mat.zeros(m.field, n, k)
    aug = hstack([m, target])
    r, piv = aug.rref()
    if any(p >= n for p in piv):
        return None
    raw = r._rawrows()
    items = []
    for row, p in zip(raw, piv):
        for c in range(k):
            x = row[n + c]
            if x != 0:
                items.append((p, c, x))
    return Mat.from_sparse(m.field, n, k, items)


def column_basis(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Normalized basis of the column space.

    Returns ``(B, rows)`` where ``B`` spans the same space as the columns of
    ``m`` and ``B.select_rows(rows)`` is the identity.  Coordinates of a vector
    ``v`` in the span are therefore ``v.select_rows(rows)``.
    """
    if m.cols == 0 or m.rows == 0:
        return Mat.zeros(m.field, m.rows, 0), ()
    r, piv = m.T.rref()
    return r.T, piv


def independent_columns(m: Mat) -> tuple[int, ...]:
    """Indices of the first maximal independent set of columns, in order."""
    if m.cols == 0 or m.rows == 0:
        return ()
    return m.rref()[1]


def inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    if m.rows == 0:
        return m
    return Mat._wrap(m.field, m._m.inv())


def vector(field: Field, values: Iterable) -> Mat:
    values = list(values)
    return Mat(field, len(values), 1, values)
