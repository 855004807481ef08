
import pytest
from hypothesis import given, strategies as st

from homcat.combcat import (FI, OI, VI, BudgetError, FI_d, OI_d, FS_op, OS_op, StarQuiver, WindowError,
                            category_from_json, compose, cyclic, hom_basis, one_step_factor_check,
                            self_embed_morphism, symmetric3)

from conftest import brute_injections, brute_injective_linear, brute_surjections

CATS = {
    "FI": FI(), "OI": OI(), "FI_Z2": FI(cyclic(2)), "FI_Z3": FI(cyclic(3)), "OI_Z2": OI(cyclic(2)),
    "FI_S3": FI(symmetric3()), "FI_1": FI_d(1), "FI_2": FI_d(2), "OI_2": OI_d(2), "VI_2": VI(2),
    "FS_op": FS_op(), "OS_op": OS_op(),
}
LIMIT = {"VI_2": 2, "FI_S3": 2, "FI_Z3": 3}


def brute_count(name, i, j):
    if name in ("FI", "OI", "FI_Z2", "FI_Z3", "OI_Z2", "FI_S3"):
        g = {"FI_Z2": 2, "OI_Z2": 2, "FI_Z3": 3, "FI_S3": 6}.get(name, 1)
        return brute_injections(i, j, name.startswith("OI")) * g ** i
    if name in ("FI_1", "FI_2", "OI_2"):
        d = 1 if name == "FI_1" else 2
        return brute_injections(i, j, name.startswith("OI")) * d ** (j - i)
    if name == "VI_2":
        return brute_injective_linear(i, j, 2)
    # object k of the surjection categories is the set [k+1]
    return brute_surjections(j + 1, i + 1, name == "OS_op")


@pytest.mark.parametrize("name", sorted(CATS))
def test_hom_counts_match_brute_force(name):
    cat = CATS[name]
    top = LIMIT.get(name, 4)
    for i in range(top + 1):
        for j in range(i, top + 1):
            basis = cat.hom_basis(i, j)
            assert len(basis) == brute_count(name, i, j), (i, j)
            assert list(basis) == sorted(set(basis)), "canonical order, no duplicates"


@pytest.mark.parametrize("name", sorted(CATS))
def test_no_downward_morphisms(name):
    assert CATS[name].hom_basis(3 if name != "VI_2" else 2, 1) == ()


def test_spec_examples(fi):
    assert len(hom_basis(fi, 1, 3)) == 3
    assert len(hom_basis(FI(cyclic(2)), 1, 2)) == 4
    assert compose(fi, fi.mor(2, 3, (3, 1)), fi.mor(1, 2, (2,))) == fi.mor(1, 3, (1,))
    z = FI(cyclic(2))
    first = z.mor(1, 2, ((1, 1),))
    second = z.mor(2, 3, ((2, 1), (1, 0)))
    assert z.compose(second, first) == z.mor(1, 3, ((2, 0),))
    assert self_embed_morphism(fi, fi.mor(1, 2, (2,))) == fi.mor(2, 3, (1, 3))
    assert fi.embed(fi.identity(1)) == fi.identity(2)


def test_vi_embedding_is_block_map():
    v = VI(2)
    phi = v.hom_basis(1, 1)[0]
    assert v.embed(phi) == v.identity(2)


def test_window_and_budget(monkeypatch):
    with pytest.raises(WindowError):
        hom_basis(FI(), 1, 5, window=3)
    monkeypatch.setenv("HOMCAT_BUDGET", "10")
    with pytest.raises(BudgetError):
        FI_d(3).hom_basis(1, 6)


@pytest.mark.parametrize("name", sorted(CATS))
def test_one_step_factorization(name):
    cat = CATS[name]
    top = LIMIT.get(name, 4)
    for i in range(top):
        assert one_step_factor_check(cat, i, top)


@pytest.mark.parametrize("name", sorted(CATS))
@given(data=st.data())
def test_associativity_identity_and_embedding(name, data):
    cat = CATS[name]
    top = LIMIT.get(name, 3)
    i, j, k, l = sorted(data.draw(st.lists(st.integers(0, top), min_size=4, max_size=4)))
    f = data.draw(st.sampled_from(cat.hom_basis(i, j)))
    g = data.draw(st.sampled_from(cat.hom_basis(j, k)))
    h = data.draw(st.sampled_from(cat.hom_basis(k, l)))
    assert cat.compose(h, cat.compose(g, f)) == cat.compose(cat.compose(h, g), f)
    assert cat.compose(cat.identity(j), f) == f == cat.compose(f, cat.identity(i))
    assert cat.compose(g, f) in cat.hom_basis(i, k)
    if name != "VI_2" or k < 2:
        assert cat.embed(cat.compose(g, f)) == cat.compose(cat.embed(g), cat.embed(f))
        assert cat.embed(cat.identity(i)) == cat.identity(i + 1)


@pytest.mark.parametrize("name", sorted(CATS))
def test_words_reproduce_morphisms(name):
    cat = CATS[name]
    top = LIMIT.get(name, 3)
    for i in range(top + 1):
        for j in range(i, top + 1):
            for phi in cat.hom_basis(i, j):
                acc = cat.identity(i)
                for g in cat.word(phi):
                    acc = cat.compose(g, acc)
                assert acc == phi


def test_category_json_roundtrip():
    for cat in CATS.values():
        assert category_from_json(cat.to_json()) == cat
    with pytest.raises(ValueError):
        category_from_json({"kind": "nope"})


def test_star_fixture_has_no_embedding():
    s = StarQuiver()
    assert s.hom_basis(0, 2) and not s.hom_basis(1, 2)
    assert s.embed(s.hom_basis(0, 1)[0]) is None
