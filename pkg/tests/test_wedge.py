import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lrsprod.wedge import (
    PExpansion,
    WedgeContext,
    binom_mod,
    struct_const,
    wedge,
    wedge_details,
    wedge_fold,
    wedge_lambda,
    wedge_oracle,
)

CHAR0 = WedgeContext(0)
CHAR2 = WedgeContext(2)
CHAR3 = WedgeContext(3)

chars = st.sampled_from([0, 2, 3, 5])
small = st.integers(min_value=0, max_value=40)
positive = st.integers(min_value=1, max_value=40)


def test_context_rejects_composite_characteristic():
    with pytest.raises(ValueError):
        WedgeContext(4)
    with pytest.raises(ValueError):
        WedgeContext(1)


def test_binom_examples():
    assert binom_mod(4, 2, CHAR2) == 0
    assert binom_mod(7, 0, CHAR2) == 1
    assert binom_mod(5, 2, WedgeContext(5)) == 0
    assert binom_mod(10, 3, CHAR0) == 120
    assert binom_mod(2, 5, CHAR0) == 0


@given(st.integers(0, 120), st.integers(0, 120), st.sampled_from([2, 3, 5, 7]))
def test_binom_matches_exact_arithmetic(n, k, p):
    assert binom_mod(n, k, WedgeContext(p)) == math.comb(n, k) % p


def test_pexpansion_round_trip():
    for n in range(200):
        for p in (2, 3, 5):
            e = PExpansion.of(n, p)
            assert e.value == n
            assert not e.digits or e.digits[-1] != 0


def test_wedge_examples():
    assert wedge(2, 3, CHAR0) == 4
    assert wedge(2, 2, CHAR2) == 2
    assert wedge(4, 4, CHAR2) == 4
    assert wedge(2, 2, CHAR3) == 3
    assert wedge(1, 9, CHAR2) == 9
    assert wedge(7, 0, CHAR3) == 0


def test_wedge_oracle_examples():
    assert wedge_oracle(3, 3, CHAR2) == 4
    assert wedge_oracle(6, 1, CHAR3) == 6
    assert wedge_oracle(5, 7, CHAR0) == 11
    with pytest.raises(ValueError):
        wedge_oracle(0, 3, CHAR2)


def test_oracle_equivalence_sample():
    for p in (2, 3):
        ctx = WedgeContext(p)
        for i in range(1, 25):
            for j in range(1, 25):
                assert wedge(i, j, ctx) == wedge_oracle(i, j, ctx)


def test_wedge_lambda_rules():
    assert wedge_lambda(3, 5, True) == 3
    assert wedge_lambda(3, 5, False) == 3
    assert wedge_lambda(3, 0, False) == 0
    assert wedge_lambda(0, 4, True) == 0


def test_wedge_fold():
    assert wedge_fold([2, 2, 2], CHAR0) == 4
    assert wedge_fold([5], CHAR2) == 5
    assert wedge_fold([2, 2, 2], CHAR2) == 2
    with pytest.raises(ValueError):
        wedge_fold([], CHAR0)


@given(chars, positive, positive)
def test_commutative(c, i, j):
    ctx = WedgeContext(c)
    assert wedge(i, j, ctx) == wedge(j, i, ctx)


@given(chars, positive, positive, positive)
def test_associative(c, i, j, k):
    ctx = WedgeContext(c)
    assert wedge(wedge(i, j, ctx), k, ctx) == wedge(i, wedge(j, k, ctx), ctx)


@given(chars, small)
def test_identity_and_absorbing(c, i):
    ctx = WedgeContext(c)
    assert wedge(i, 1, ctx) == i
    assert wedge(i, 0, ctx) == 0


@given(chars, positive, positive, positive)
def test_distributes_over_max(c, i, j, m):
    ctx = WedgeContext(c)
    assert wedge(max(i, j), m, ctx) == max(wedge(i, m, ctx), wedge(j, m, ctx))


@given(chars, positive, positive)
def test_bounds(c, i, j):
    ctx = WedgeContext(c)
    assert max(i, j) <= wedge(i, j, ctx) <= i + j - 1


@settings(max_examples=200)
@given(chars, small, small, small, small)
def test_monotonicity(c, s, ds, t, dt):
    ctx = WedgeContext(c)
    assert wedge(s, t, ctx) <= wedge(s + ds, t + dt, ctx)
    for lam_zero in (True, False):
        assert wedge_lambda(s, t, lam_zero) <= wedge_lambda(s + ds, t + dt, lam_zero)


def test_scaling_and_divisibility():
    for p in (2, 3):
        ctx = WedgeContext(p)
        for s in (1, 2, 3):
            ps = p**s
            for i in range(1, 17):
                for j in range(1, 17):
                    assert wedge(i * ps, j * ps, ctx) == ps * wedge(i, j, ctx)
                    assert wedge(i * ps, j, ctx) % ps == 0


def test_char_p_boundary_via_digit_cutoff():
    for p in (2, 3, 5):
        ctx = WedgeContext(p)
        for i in range(1, 30):
            for j in range(1, 30):
                details = wedge_details(i, j, ctx)
                assert (details.value == i + j - 1) == (details.q == 0)


def test_struct_const_examples():
    assert struct_const(1, 1, 2, CHAR0) == 2
    assert struct_const(1, 1, 2, CHAR2) == 0
    assert struct_const(0, 5, 5, CHAR0) == 1
    with pytest.raises(ValueError):
        struct_const(2, 3, 6, CHAR0)
    with pytest.raises(ValueError):
        struct_const(2, 3, 1, CHAR0)


def test_struct_const_expansion_identity():
    for e in range(0, 9):
        for t in range(0, 9):
            for n in range(0, 18):
                lhs = math.comb(n, e) * math.comb(n, t)
                rhs = sum(
                    struct_const(e, t, m, CHAR0) * math.comb(n, m)
                    for m in range(max(e, t), e + t + 1)
                )
                assert lhs == rhs


def test_struct_const_pascal_recurrences():
    for e in range(1, 13):
        assert struct_const(e, e, 2 * e, CHAR0) == 2 * struct_const(e - 1, e, 2 * e - 1, CHAR0)
    for e in range(1, 13):
        for t in range(1, 13):
            if e == t:
                continue
            assert struct_const(e, t, e + t, CHAR0) == struct_const(
                e, t - 1, e + t - 1, CHAR0
            ) + struct_const(e - 1, t, e + t - 1, CHAR0)
