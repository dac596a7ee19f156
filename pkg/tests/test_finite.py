import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from laxton.arith import Splitting, splitting_type
from laxton.finite import (
    FiniteGroupTable,
    abelian_invariants,
    enumerate_G,
    enumerate_Gstar,
    expected_fp_order,
    integer_unit_table,
    invariants_of_product,
    rank,
    residue_type,
    unit_quotient,
    unit_quotient_formula,
)
from laxton.recurrence import RecurrenceParams

from oracles import fp_group_order, integer_rank, invariants_by_matching, unit_quotient_bruteforce

FIB = RecurrenceParams(1, -1)
SMALL_PRIMES = list(sympy.primerange(2, 40))


def pq():
    return st.tuples(st.integers(-10, 10), st.integers(-10, 10).filter(bool)).filter(lambda t: t[0] ** 2 != 4 * t[1]).map(lambda t: RecurrenceParams(*t))


def test_group_examples():
    assert enumerate_G(FIB, 3).order == 4
    assert enumerate_G(FIB, 11).order == 10
    g = enumerate_G(RecurrenceParams(1, -2), 3)
    assert g.order == 3 and g.invariant_factors == [3]
    with pytest.raises(ValueError, match="Q not a unit mod 3"):
        enumerate_G(RecurrenceParams(1, 3), 3)


def test_rank_examples():
    assert rank(FIB, 2).r == 3
    assert rank(RecurrenceParams(2, -1), 2).r == 2
    assert rank(FIB, 5).r == 5
    assert rank(FIB, 11).r == 10
    assert rank(FIB, 29).r == 14


def test_gstar_examples():
    assert enumerate_Gstar(FIB, 3).order == 1
    assert enumerate_Gstar(FIB, 29).order == 2
    assert enumerate_Gstar(RecurrenceParams(1, -2), 3).order == 1


def test_invariant_examples():
    assert abelian_invariants(enumerate_G(FIB, 3)) == [4]
    trivial = FiniteGroupTable([0], lambda a, b: 0, 0)
    assert abelian_invariants(trivial) == []
    assert invariants_of_product([2, 4, 3]) == [2, 12]
    assert invariants_of_product([6, 10]) == [2, 30]


def test_invariants_of_non_cyclic_groups():
    # (Z/15)^x = Z/2 x Z/4, (Z/8)^x = Z/2 x Z/2, (Z/21)^x = Z/2 x Z/6
    for n, expected in [(15, [2, 4]), (8, [2, 2]), (21, [2, 6]), (9, [6]), (27, [18])]:
        elems = [x for x in range(1, n) if sympy.gcd(x, n) == 1]
        table = FiniteGroupTable(elems, lambda a, b, n=n: a * b % n, 1)
        assert abelian_invariants(table) == expected
        assert invariants_by_matching(elems, lambda a, b, n=n: a * b % n, 1) == expected


def test_unit_quotient_examples():
    assert unit_quotient(RecurrenceParams(2, -17), 3, 1) == [4]
    assert unit_quotient(RecurrenceParams(1, -31), 5, 1) == [5]
    assert unit_quotient(FIB, 3, 0) == []
    assert unit_quotient(FIB, 7) == []
    with pytest.raises(ValueError, match="no quadratic order"):
        unit_quotient(RecurrenceParams(1, -2), 3)


@settings(max_examples=60)
@given(pq(), st.sampled_from(SMALL_PRIMES))
def test_group_order_against_counting(params, p):
    if params.Q % p == 0:
        return
    g = enumerate_G(params, p)
    assert g.order == fp_group_order(params.P, params.Q, p) == expected_fp_order(params, p)
    if p != 2:
        sp = splitting_type(params, p)
        if params.D % p:
            assert g.order == (p + 1 if sp is Splitting.INERT else p - 1)
        else:
            assert g.order == p


@settings(max_examples=60)
@given(pq(), st.sampled_from(SMALL_PRIMES))
def test_rank_against_integer_iteration(params, p):
    if params.Q % p == 0:
        return
    res = rank(params, p)
    assert res.consistent
    assert res.r == integer_rank(params.P, params.Q, p)
    assert enumerate_Gstar(params, p).order * res.r == enumerate_G(params, p).order


@settings(max_examples=40, deadline=None)
@given(pq(), st.sampled_from(SMALL_PRIMES))
def test_invariants_against_order_matching(params, p):
    if params.Q % p == 0:
        return
    for table in (enumerate_G(params, p), enumerate_Gstar(params, p)):
        inv = table.invariant_factors
        assert inv == invariants_by_matching(table.elements, table.mul, table.identity)
        assert sympy.prod(inv) == table.order
        assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
    # cyclic in every case
    assert len(enumerate_G(params, p).invariant_factors) <= 1


@given(pq(), st.sampled_from(SMALL_PRIMES))
def test_group_axioms_on_table(params, p):
    if params.Q % p == 0:
        return
    g = enumerate_G(params, p)
    elems = g.elements
    e = g.identity
    for x in elems[:6]:
        assert g.mul(x, e) == x
        assert any(g.mul(x, y) == e for y in elems)
        for y in elems[:6]:
            assert g.mul(x, y) == g.mul(y, x)
            for z in elems[:4]:
                assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))


def test_residue_types():
    assert residue_type(FIB, 3) == "irreducible"
    assert residue_type(FIB, 11) == "split"
    assert residue_type(FIB, 5) == "double"
    assert residue_type(FIB, 2) == "irreducible"


UQ_CASES = [
    # (P, Q, p): inert, split and ramified instances with s >= 2, small enough to enumerate fully
    (2, -17, 3),
    (1, -11, 3),
    (0, -5, 5),
    (1, -31, 5),
    (3, -8, 3),
    (0, -27, 3),
    (0, -63, 3),
    (4, -7, 2),
    (0, -7, 7),
]


@pytest.mark.parametrize("P,Q,p", UQ_CASES)
def test_unit_quotient_against_bruteforce(P, Q, p):
    params = RecurrenceParams(P, Q)
    m, _ = params.squarefree()
    s, _ = params.p_part(p)
    for k in range(0, 3):
        if p ** (2 * k) > 3000:
            break
        for gen in ("sqrt", "half") if m % 4 == 1 else ("sqrt",):
            if gen == "sqrt" and p == 2 and m % 4 == 1:
                continue
            got = unit_quotient(params, p, k, gen)
            assert got == (unit_quotient_bruteforce(m, p, k, gen == "half") if k else [])


@pytest.mark.parametrize("P,Q,p", [(1, -1, 11), (1, -11, 3), (3, 1, 5), (0, -45, 3), (1, -19, 5)])
def test_unit_quotient_generator_independent(P, Q, p):
    params = RecurrenceParams(P, Q)
    for k in (1, 2):
        assert unit_quotient(params, p, k, "sqrt") == unit_quotient(params, p, k, "half")


def test_unit_quotient_formula_cases():
    assert unit_quotient_formula(RecurrenceParams(2, -17), 3) == [[4]]
    assert unit_quotient_formula(RecurrenceParams(1, -31), 5) == [[5]]
    assert unit_quotient_formula(FIB, 5) == [[]]
    # k = 1: the two candidate groups coincide
    assert unit_quotient_formula(RecurrenceParams(0, -27), 3) == [[3]]
    # D = -3^5: k = 2 and the two candidates differ
    assert unit_quotient_formula(RecurrenceParams(1, 61), 3) == [[9], [3, 3]]
    assert unit_quotient_formula(RecurrenceParams(4, -7), 2) is None


def test_integer_units():
    assert integer_unit_table(5, 2).invariant_factors == [20]
    assert integer_unit_table(2, 3).invariant_factors == [2, 2]
    assert integer_unit_table(3, 0).order == 1
