from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from homcat.exactla import (GF, QQ, Field, Mat, column_basis, hstack, kernel_basis, kernel_with_pivots, rank,
                            solve_preimage, vstack)

from conftest import oracle_rank

small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows=6, max_cols=6, elems=small):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(elems) for _ in range(c)] for _ in range(r)]


fields = st.sampled_from([QQ, GF(2), GF(3), GF(7)])


# -- TRIVIAL examples ------------------------------------------------------


def test_rank_examples():
    assert rank(Mat.identity(QQ, 3)) == 3
    assert rank(Mat.from_rows(QQ, [[1, 2], [2, 4]])) == 1
    assert rank(Mat.from_rows(GF(2), [[1, 1], [1, 1]])) == 1


def test_kernel_examples():
    k = kernel_basis(Mat.from_rows(QQ, [[1, 1]]))
    assert k.cols == 1 and k.column(0) in ([1, -1], [-1, 1])
    assert kernel_basis(Mat.from_rows(QQ, [[1, 2], [3, 4]])).cols == 0
    assert kernel_basis(Mat.zeros(QQ, 2, 3)).cols == 3


def test_solve_examples():
    t = Mat.from_rows(QQ, [[5, 1], [-2, 7]])
    assert solve_preimage(Mat.identity(QQ, 2), t) == t
    assert solve_preimage(Mat.from_rows(QQ, [[1], [1]]), Mat.from_rows(QQ, [[1], [2]])) is None
    x = solve_preimage(Mat.from_rows(QQ, [[1, 0], [0, 0]]), Mat.from_rows(QQ, [[3], [0]]))
    assert x.entry(0, 0) == 3


def test_field_elements_are_canonical():
    assert QQ(Fraction(4, -6)) == Fraction(-2, 3)
    assert GF(5)(-1) == 4
    assert GF(7)(Fraction(1, 3)) == 5
    with pytest.raises(ValueError):
        Field(4)


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        Mat.identity(QQ, 2) @ Mat.identity(GF(2), 2)


def test_immutable():
    m = Mat.identity(QQ, 2)
    with pytest.raises(AttributeError):
        m.rows = 3


def test_stacking():
    a = Mat.from_rows(QQ, [[1, 2]])
    b = Mat.from_rows(QQ, [[3, 4]])
    assert vstack([a, b]).tolist() == [[1, 2], [3, 4]]
    assert hstack([a, b]).tolist() == [[1, 2, 3, 4]]


# -- properties against the pure-Python oracle -----------------------------


@given(matrices(), fields)
def test_rank_matches_oracle(rows, F):
    m = Mat.from_rows(F, rows)
    assert rank(m) == oracle_rank(rows, F.char)
    assert rank(m) == rank(m.T)


@given(matrices(), fields)
def test_kernel_properties(rows, F):
    m = Mat.from_rows(F, rows)
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert rank(m) + k.cols == m.cols
    assert rank(k) == k.cols
    k2, free = kernel_with_pivots(m)
    assert k2 == k and k.select_rows(free) == Mat.identity(F, k.cols)


@given(matrices(), matrices(max_cols=2), fields)
def test_solve_preimage_contract(rows, trows, F):
    m = Mat.from_rows(F, rows)
    t = Mat.from_rows(F, (trows * 6)[: m.rows])
    if t.rows != m.rows:
        return
    x = solve_preimage(m, t)
    if x is None:
        assert rank(hstack([m, t])) > rank(m)
    else:
        assert m @ x == t


@given(matrices(max_rows=24, max_cols=24), fields, st.data())
def test_selection_paths_agree(rows, F, data):
    m = Mat.from_rows(F, rows)
    idx = data.draw(st.lists(st.integers(0, m.rows - 1), max_size=30))
    jdx = data.draw(st.lists(st.integers(0, m.cols - 1), max_size=30))
    raw = m.tolist()
    assert m.select_rows(idx).tolist() == [raw[i] for i in idx] or not idx
    assert m.select_cols(jdx).tolist() == [[r[j] for j in jdx] for r in raw] or not jdx


@given(matrices(), fields)
def test_column_basis_normalized(rows, F):
    m = Mat.from_rows(F, rows)
    B, piv = column_basis(m)
    assert B.cols == rank(m)
    assert B.select_rows(piv) == Mat.identity(F, B.cols)
    assert rank(hstack([B, m])) == B.cols
