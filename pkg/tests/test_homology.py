import json

import pytest
from hypothesis import given, settings, strategies as st

from homcat.combcat import FI, OI, FI_d, FS_op, StarQuiver, cyclic
from homcat.exactla import GF, QQ, hstack, kernel_basis, rank, vstack
from homcat.homology import (GENERIC, MINIMAL, NEG_INF, HomologyTable, KoszulPreconditionError, degrees,
                             genetic_check, h0, homology_dims, koszul_check, resolution, syzygy,
                             torsion_degree, torsion_part_dims)
from homcat.repmod import (Free, Quot, Shift, SubSpan, TorsionQuot, evaluate, free_module, validate_module,
                           zero_module)


def brute_h0(V):
    """dim V_j minus the rank of everything mapped in from strictly lower objects."""
    cat, out = V.cat, []
    for j, m in enumerate(V.dims):
        if m == 0:
            out.append(0)
            continue
        imgs = [V.act(phi) for i in range(j) for phi in cat.hom_basis(i, j) if V.dims[i]]
        out.append(m - (rank(hstack(imgs)) if imgs else 0))
    return tuple(out)


def brute_torsion(V):
    """dim of {v in V_j : phi v = 0 for every phi: j -> j+1}, j < N."""
    out = []
    for j, m in enumerate(V.dims):
        if m == 0 or j == V.window:
            out.append(0)
            continue
        mats = [V.act(phi) for phi in V.cat.hom_basis(j, j + 1)]
        out.append(kernel_basis(vstack(mats)).cols)
    return tuple(out)


def diag(cat=None, window=5, coords=(1, 1), quotient=False):
    cat = cat or FI()
    sub = SubSpan(Free(1), ((2, coords),))
    return evaluate(Quot(Free(1), sub) if quotient else sub, cat, QQ, window)


def atom(window=5, cat=None):
    return evaluate(TorsionQuot(Free(0), 0), cat or FI(), QQ, window)


@pytest.mark.parametrize("V", [
    free_module(FI(), 1, 4), diag(), diag(quotient=True), atom(4),
    free_module(FS_op(), 0, 3), evaluate(TorsionQuot(Free(1), 2), FI(cyclic(2)), QQ, 3),
], ids=["free", "sub", "quot", "atom", "fs_op", "fi_z2"])
def test_resolution_is_a_complex_of_module_maps_and_exact(V):
    res = resolution(V, 2)
    P = [st.module for st in res.steps]
    D = [st.differential for st in res.steps]
    cat = V.cat
    for j in range(V.window + 1):
        assert rank(D[0][j]) == V.dims[j], "augmentation onto"
        for s in range(2):
            assert (D[s][j] @ D[s + 1][j]).is_zero()
        assert rank(D[0][j]) + rank(D[1][j]) == P[0].dims[j]
        assert rank(D[1][j]) + rank(D[2][j]) == P[1].dims[j]
    for i in range(V.window + 1):
        for k in range(i, min(i + 1, V.window) + 1):
            for phi in cat.hom_basis(i, k):
                assert V.act(phi) @ D[0][i] == D[0][k] @ P[0].act(phi)
                assert P[0].act(phi) @ D[1][i] == D[1][k] @ P[1].act(phi)


@pytest.mark.parametrize("V", [diag(), diag(quotient=True), atom(), free_module(OI(), 1, 4)],
                         ids=["sub", "quot", "atom", "oi"])
def test_h0_against_brute_force_and_h1_is_h0_of_syzygy(V):
    t = homology_dims(V, 1)
    assert tuple(t.dims[0]) == brute_h0(V) == h0(V).dims
    Om = syzygy(V)
    assert validate_module(Om).ok
    assert tuple(t.dims[1]) == brute_h0(Om)


@pytest.mark.parametrize("V", [diag(quotient=True), atom(), evaluate(Shift(Free(2), 1), FI(), QQ, 4)],
                         ids=["quot", "atom", "shifted"])
def test_torsion_against_brute_force(V):
    assert torsion_part_dims(V) == brute_torsion(V)


@settings(max_examples=12)
@given(st.lists(st.integers(-2, 2), min_size=2, max_size=2).filter(any), st.booleans(),
       st.sampled_from([QQ, GF(5)]))
def test_minimal_and_generic_modes_agree(coords, quotient, F):
    sub = SubSpan(Free(1), ((2, tuple(coords)),))
    V = evaluate(Quot(Free(1), sub) if quotient else sub, FI(), F, 4)
    a = homology_dims(V, 2, MINIMAL)
    b = homology_dims(V, 2, GENERIC)
    c = homology_dims(V, 2, GENERIC, redundancy=2)
    assert a.dims == b.dims == c.dims


def test_atom_is_koszul_in_degree_zero():
    t = homology_dims(atom(5), 3)
    for s in range(4):
        assert t.support(s) == [s]
    assert t.td == 0 and t.hd[:4] == [0, 1, 2, 3]
    v = koszul_check(atom(5), 0, 3, t)
    assert v.ok and v.failures == []


def test_koszul_precondition_and_failure():
    V = evaluate(TorsionQuot(Free(0), 1), FI(), QQ, 5)
    with pytest.raises(KoszulPreconditionError):
        koszul_check(V, 1, 2)
    assert not koszul_check(V, 0, 2).ok
    S = evaluate(Shift(TorsionQuot(Free(0), 1), 1), FI(), QQ, 5)
    assert koszul_check(S, 0, 2).ok


def test_degree_examples():
    assert degrees(free_module(FI(), 1, 4), 1).td == NEG_INF
    z = degrees(zero_module(FI(), QQ, 3), 2)
    assert z.td == z.gd == NEG_INF and z.hd == [NEG_INF] * 3
    assert torsion_degree(diag(quotient=True)) == 2
    assert degrees(diag(), 0).gd == 2


def test_fi_z2_mode_choice_matches_both_modes():
    V = evaluate(TorsionQuot(Free(1), 2), FI(cyclic(2)), QQ, 3)
    assert homology_dims(V, 1, MINIMAL).dims == homology_dims(V, 1, GENERIC).dims


def test_prime_field_dividing_group_order():
    V = evaluate(TorsionQuot(Free(1), 2), FI(), GF(2), 4)
    assert homology_dims(V, 1, MINIMAL).dims == homology_dims(V, 1, GENERIC).dims


@pytest.mark.parametrize("cat", [FI(), OI(), FI_d(2), FI(cyclic(2))], ids=lambda c: c.name)
def test_genetic_categories(cat):
    for s in range(3):
        v = genetic_check(cat, s, 4 if cat.name in ("FI", "OI") else 3, linear_window=3)
        assert v.ok and v.free, v.message


def test_star_fixture_is_not_genetic():
    v = genetic_check(StarQuiver(), 0, 2)
    assert not v.ok


def test_table_serialization_roundtrip():
    t = homology_dims(atom(4), 2)
    back = HomologyTable.from_json(json.loads(json.dumps(t.to_json())))
    assert back.dims == t.dims and back.td == t.td and back.hd == t.hd
    rows = t.to_csv().strip().splitlines()
    assert rows[0] == "s,0,1,2,3,4" and rows[2] == "1,0,1,0,0,0" and len(rows) == 4
    json.dumps(t.to_json(), allow_nan=False)
