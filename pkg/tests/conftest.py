"""Shared oracles and the acceptance summary printed at the end of a run."""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("homcat", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("homcat")

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


# ---------------------------------------------------------------------------
# pure-Python linear algebra oracle (independent of the flint backend)
# ---------------------------------------------------------------------------


def oracle_rank(rows, p: int = 0) -> int:
    """Rank by textbook Gaussian elimination over Q (p = 0) or F_p."""
    if p == 0:
        M = [[Fraction(x) for x in r] for r in rows]
    else:
        M = [[int(x) % p for x in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = 1 / M[rank][c] if p == 0 else pow(M[rank][c], -1, p)
        for r in range(len(M)):
            if r != rank and M[r][c] != 0:
                f = M[r][c] * inv
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
                if p:
                    M[r] = [a % p for a in M[r]]
        rank += 1
    return rank


def to_lists(m) -> list[list]:
    return m.tolist()


# ---------------------------------------------------------------------------
# brute-force hom-set sizes
# ---------------------------------------------------------------------------


def brute_injections(i: int, j: int, ordered: bool) -> int:
    return sum(1 for f in itertools.product(range(j), repeat=i)
               if len(set(f)) == i and (not ordered or list(f) == sorted(f)))


def brute_surjections(n: int, m: int, ordered: bool) -> int:
    """Maps [n] -> [m] hitting every point (monotone when ``ordered``)."""
    return sum(1 for f in itertools.product(range(m), repeat=n)
               if set(f) == set(range(m)) and (not ordered or list(f) == sorted(f)))


def brute_injective_linear(i: int, j: int, q: int = 2) -> int:
    vecs = list(itertools.product(range(q), repeat=j))
    return sum(1 for cols in itertools.product(vecs, repeat=i) if oracle_rank(list(cols), q) == i)


@pytest.fixture(scope="session")
def fi():
    from homcat.combcat import FI

    return FI()
