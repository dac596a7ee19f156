from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laxton.recurrence import (
    ClassVector,
    RecurrenceParams,
    RingCtx,
    b_act,
    identity,
    inv,
    lambda_norm,
    laxton_mul,
    localized,
    lucas_pair,
    mul,
    power,
    prime_field,
    shift_matrix_power,
    term,
    term_pair,
    window,
)

from oracles import naive_terms, root_product

FIB = RecurrenceParams(1, -1)


def pq():
    return st.tuples(st.integers(-9, 9), st.integers(-9, 9).filter(bool)).filter(lambda t: t[0] ** 2 != 4 * t[1]).map(lambda t: RecurrenceParams(*t))


small = st.integers(-30, 30)


def test_params_validation():
    with pytest.raises(ValueError, match="Q must be nonzero"):
        RecurrenceParams(1, 0)
    with pytest.raises(ValueError, match="degenerate discriminant"):
        RecurrenceParams(2, 1)
    assert RecurrenceParams(2, -17).D == 72
    assert RecurrenceParams(2, -17).p_part(3) == (2, 8)


def test_ring_contexts():
    assert RingCtx.parse("Fp:7") == prime_field(7)
    assert str(localized(5)) == "Zp:5"
    assert prime_field(5).coerce(Fraction(1, 2)) == 3
    with pytest.raises(ValueError, match="not a 5-adic integer"):
        localized(5).coerce(Fraction(1, 5))
    with pytest.raises(ValueError, match="not prime"):
        RingCtx("Fp", 8)
    with pytest.raises(ValueError, match="Q not a unit"):
        ClassVector(1, 0, RecurrenceParams(1, 3), prime_field(3))


def test_fibonacci_terms():
    F, L = lucas_pair(FIB)
    assert [term(F, n) for n in range(11)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    assert [term(L, n) for n in range(6)] == [2, 1, 3, 4, 7, 11]
    assert term(F, -5) == 5 and term(F, -6) == -8
    assert term_pair(F, 10) == (89, 55)


def test_examples():
    a, b = ClassVector(2, 1, FIB), ClassVector(1, 1, FIB)
    assert mul(a, b).pair == (3, 2)
    assert inv(ClassVector(0, 1, FIB)).pair == (1, 1)
    assert inv(ClassVector(0, 1, FIB, prime_field(3))).pair == (1, 1)
    assert b_act(ClassVector(1, 1, FIB), 1).pair == (2, 1)
    assert lambda_norm(a) == 1
    assert mul(identity(FIB), a) == a


def test_inverse_of_non_unit():
    with pytest.raises(ZeroDivisionError, match="not invertible"):
        inv(ClassVector(1, 2, FIB, prime_field(5)))
    with pytest.raises(ZeroDivisionError, match="not invertible"):
        inv(ClassVector(1, 2, FIB, localized(5)))


@settings(max_examples=40)
@given(pq(), small, small, st.integers(-15, 15))
def test_terms_match_naive_iteration(params, w1, w0, n):
    v = ClassVector(w1, w0, params)
    lo, hi = min(n, 0), max(n, 1)
    expected = naive_terms(params.P, params.Q, w1, w0, lo, hi)
    assert term(v, n) == expected[n - lo]


@given(pq(), small, small, st.integers(-5, 5), st.integers(0, 12))
def test_window_satisfies_recurrence(params, w1, w0, start, count):
    w = window(ClassVector(w1, w0, params), start, count)
    assert len(w.terms) == count and w.satisfies_recurrence()


@given(pq(), st.integers(-12, 12), st.integers(-12, 12))
def test_matrix_powers_compose(params, m, n):
    ctx = RingCtx()
    A, B = shift_matrix_power(params, m), shift_matrix_power(params, n)
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    prod = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
    assert prod == shift_matrix_power(params, m + n, ctx)


@settings(max_examples=25, deadline=None)
@given(pq(), small, small, small, small)
def test_product_matches_root_formula(params, a1, a0, b1, b0):
    if (a1, a0) == (0, 0) or (b1, b0) == (0, 0):
        return
    a, b = ClassVector(a1, a0, params), ClassVector(b1, b0, params)
    assert laxton_mul(a, b).pair == root_product(params.P, params.Q, (a1, a0), (b1, b0))
    assert mul(a, b).pair == laxton_mul(a, b).pair


def contexts():
    return st.sampled_from([RingCtx(), localized(3), localized(7), prime_field(5), prime_field(11)])


@given(pq(), contexts(), small, small, small, small, small, small)
def test_group_axioms(params, ctx, a1, a0, b1, b0, c1, c0):
    if ctx.p and params.Q % ctx.p == 0:
        return
    a, b, c = (ClassVector(x, y, params, ctx) for x, y in ((a1, a0), (b1, b0), (c1, c0)))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b) == mul(b, a)
    assert mul(a, identity(params, ctx)) == a
    assert lambda_norm(mul(a, b)) == ctx.coerce(lambda_norm(a) * lambda_norm(b))
    if a.is_unit():
        assert mul(a, inv(a)) == identity(params, ctx)


@given(pq(), contexts(), small, small, st.integers(-20, 20))
def test_norm_shift_law(params, ctx, w1, w0, n):
    if ctx.p and params.Q % ctx.p == 0:
        return
    v = ClassVector(w1, w0, params, ctx)
    assert lambda_norm(b_act(v, n)) == ctx.coerce(Fraction(params.Q) ** n * lambda_norm(v))


@given(pq(), small, small, st.integers(-8, 8))
def test_shift_is_multiplication_by_generator(params, w1, w0, n):
    v = ClassVector(w1, w0, params)
    g = ClassVector(params.P, 1, params)  # [0,1]^-1 = [P,1] represents theta_2
    assert b_act(v, n) == mul(v, power(g, n))


@given(pq(), small, small, st.integers(-6, 6), st.integers(-6, 6))
def test_power_laws(params, w1, w0, m, n):
    v = ClassVector(w1, w0, params)
    if not v.is_unit():
        return
    assert mul(power(v, m), power(v, n)) == power(v, m + n)


@given(pq(), st.sampled_from([3, 5, 7, 13]), small, small, small, small)
def test_reduction_commutes_with_product(params, p, a1, a0, b1, b0):
    if params.Q % p == 0:
        return
    Fp = prime_field(p)
    over_q = mul(ClassVector(a1, a0, params), ClassVector(b1, b0, params))
    over_fp = mul(ClassVector(a1, a0, params, Fp), ClassVector(b1, b0, params, Fp))
    assert over_fp.pair == (int(over_q.w1) % p, int(over_q.w0) % p)
