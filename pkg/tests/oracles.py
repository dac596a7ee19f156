"""Reference computations used only by the tests.

Each one takes a different route from the library: plain iteration instead of
matrix powers, root formulas instead of the seed-vector product, brute-force
counting over F_p x F_p instead of the projective line, order multisets of
explicit cyclic products instead of order statistics.
"""

import math
from collections import Counter
from fractions import Fraction
from itertools import product

import sympy


def naive_terms(P, Q, w1, w0, lo, hi):
    """Terms ``w_n`` for ``lo <= n <= hi`` by stepping the recurrence one index at a time."""
    terms = {0: Fraction(w0), 1: Fraction(w1)}
    for n in range(2, hi + 1):
        terms[n] = P * terms[n - 1] - Q * terms[n - 2]
    for n in range(-1, lo - 1, -1):
        # w_n = (P w_{n+1} - w_{n+2}) / Q
        terms[n] = (P * terms[n + 1] - terms[n + 2]) / Fraction(Q)
    return [terms[n] for n in range(lo, hi + 1)]


def root_product(P, Q, a, b):
    """Product of two sequences via ``w_n = (A th1^n - B th2^n)/(th1 - th2)``, computed with sympy.

    The product sequence has coefficients ``A C`` and ``B D``; its seeds are
    read off at ``n = 1`` and ``n = 0``.
    """
    t = sympy.symbols("t")
    th1, th2 = sympy.solve(t**2 - P * t + Q, t)
    (w1, w0), (v1, v0) = a, b
    A, B = w1 - w0 * th2, w1 - w0 * th1
    C, D = v1 - v0 * th2, v1 - v0 * th1

    def seq(n):
        return sympy.nsimplify(sympy.simplify((A * C * th1**n - B * D * th2**n) / (th1 - th2)))

    u1, u0 = seq(1), seq(0)
    return Fraction(int(sympy.fraction(u1)[0]), int(sympy.fraction(u1)[1])), Fraction(int(sympy.fraction(u0)[0]), int(sympy.fraction(u0)[1]))


def integer_rank(P, Q, p, limit=100000):
    """Least ``n > 0`` with ``p | F_n``, iterating the integer Lucas sequence without reduction."""
    a, b = 0, 1
    for n in range(1, limit):
        if b % p == 0:
            return n
        a, b = b, P * b - Q * a
    raise RuntimeError("no zero found")


def fp_group_order(P, Q, p):
    """``|G_{F_p}(f)|`` as the number of nonzero-norm vectors in ``F_p^2`` divided by ``p - 1``."""
    count = sum(1 for x, y in product(range(p), repeat=2) if (x * x - P * x * y + Q * y * y) % p)
    assert count % (p - 1) == 0
    return count // (p - 1)


def _order_multiset(factors):
    counts = Counter()
    for elem in product(*(range(d) for d in factors)):
        o = 1
        for x, d in zip(elem, factors):
            o = math.lcm(o, d // math.gcd(x, d))
        counts[o] += 1
    return counts


def _chains(n, smallest=2):
    """All lists ``d_1 | d_2 | ... | d_k`` with product ``n``, each ``d_i >= 2``."""
    if n == 1:
        return [[]]
    out = []
    for d in range(smallest, n + 1):
        if n % d:
            continue
        for rest in _chains(n // d, d):
            if not rest or rest[0] % d == 0:
                out.append([d] + rest)
    return out


def invariants_by_matching(elements, mul, identity):
    """Invariant factors found by matching the element-order multiset against every candidate group."""
    def order(x):
        k, y = 1, x
        while y != identity:
            y = mul(y, x)
            k += 1
        return k

    observed = Counter(order(x) for x in elements)
    matches = [c for c in _chains(len(elements)) if _order_multiset(c) == observed]
    assert len(matches) == 1, matches
    return matches[0]


def unit_quotient_bruteforce(m, p, k, half):
    """``(O/p^k)^x / (Z/p^k)^x`` enumerated as orbits of all unit pairs under rational scalars.

    ``half`` selects ``omega = (1 + sqrt m)/2`` (with ``omega^2 = omega + (m-1)/4``),
    otherwise ``omega = sqrt m``.
    """
    mod = p**k
    b, c = (1, (m - 1) // 4) if half else (0, m)

    def mult(u, v):
        (x1, y1), (x2, y2) = u, v
        return (x1 * x2 + c * y1 * y2) % mod, (x1 * y2 + y1 * x2 + b * y1 * y2) % mod

    scalars = [s for s in range(mod) if s % p]
    units = [(x, y) for x, y in product(range(mod), repeat=2) if (x * x + b * x * y - c * y * y) % p]
    orbit_of = {}
    for u in units:
        if u in orbit_of:
            continue
        orbit = frozenset(((u[0] * s) % mod, (u[1] * s) % mod) for s in scalars)
        for w in orbit:
            orbit_of[w] = min(orbit)
    reps = sorted(set(orbit_of.values()))
    return invariants_by_matching(reps, lambda u, v: orbit_of[mult(u, v)], orbit_of[(1, 0)])


def legendre(a, p):
    return sympy.legendre_symbol(a % p, p) if a % p else 0


def root_product_fast(P, Q, a, b):
    """Same as :func:`root_product` but with the library's exact quadratic arithmetic instead of sympy."""
    from laxton.arith import QuadElem
    from laxton.recurrence import RecurrenceParams

    params = RecurrenceParams(P, Q)
    th1 = QuadElem.theta1(params)
    th2 = th1.conj()
    (w1, w0), (v1, v0) = a, b
    A, B = th1.scalar(w1) - th2 * Fraction(w0), th1.scalar(w1) - th1 * Fraction(w0)
    C, D = th1.scalar(v1) - th2 * Fraction(v0), th1.scalar(v1) - th1 * Fraction(v0)
    diff = th1 - th2
    u1 = (A * C * th1 - B * D * th2) / diff
    u0 = (A * C - B * D) / diff
    return u1.rational_value(), u0.rational_value()
