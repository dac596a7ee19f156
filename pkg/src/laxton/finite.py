"""Finite groups attached to ``f`` modulo ``p``.

``G_{F_p}(f)`` is enumerated as the set of points of ``P^1(F_p)`` with nonzero
norm form, and ``G*_{F_p}(f)`` as its quotient by the cyclic subgroup generated
by ``[0, 1]``.  Invariant factors of any small finite abelian group are read
off from counts of elements killed by prime powers.  The last part enumerates
``(O_F/p^k)^x / (Z/p^k)^x``, the unit quotient measuring how far ``Z[theta_1]``
is from the maximal order at ``p``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Hashable, Optional, Sequence

from .arith import (
    as_prime,
    field_discriminant,
    local_conductor_exponent,
    squarefree_decomposition,
    vp_int,
)
from .recurrence import RecurrenceParams


@dataclass
class FiniteGroupTable:
    """A finite abelian group given by its element list and a multiplication.

    ``mul`` must return elements in the same canonical form as ``elements``.
    """

    elements: list
    mul: Callable[[Hashable, Hashable], Hashable]
    identity: Hashable
    name: str = ""
    index: dict = field(init=False, repr=False)
    _invariants: Optional[list] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.index = {x: i for i, x in enumerate(self.elements)}
        if self.identity not in self.index:
            raise ValueError("identity is not among the elements")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def power(self, x, n: int):
        result, base = self.identity, x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def element_order(self, x) -> int:
        """Order of ``x``, found by stripping prime factors from the group order."""
        o = self.order
        for q in _prime_factors(self.order):
            while o % q == 0 and self.power(x, o // q) == self.identity:
                o //= q
        return o

    def exponent(self) -> int:
        return math.lcm(*(self.element_order(x) for x in self.elements)) if self.elements else 1

    @property
    def invariant_factors(self) -> list[int]:
        if self._invariants is None:
            self._invariants = abelian_invariants(self)
        return self._invariants

    def multiplication_table(self) -> list[list[int]]:
        """Dense table of element indices; only sensible for small groups."""
        return [[self.index[self.mul(x, y)] for y in self.elements] for x in self.elements]


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def invariants_from_primary(primary: dict[int, list[int]]) -> list[int]:
    """Combine ``{q: [e_1 >= e_2 >= ...]}`` (exponents of cyclic q-factors) into ``d_1 | d_2 | ...``."""
    length = max((len(v) for v in primary.values()), default=0)
    factors = []
    for i in range(length):
        d = 1
        for q, exps in primary.items():
            if i < len(exps):
                d *= q ** exps[i]
        factors.append(d)
    return sorted(factors)


def invariants_of_product(cyclic_orders: Sequence[int]) -> list[int]:
    """Invariant factors of ``Z/n_1 x Z/n_2 x ...``."""
    primary: dict[int, list[int]] = {}
    for n in cyclic_orders:
        for q in _prime_factors(n):
            primary.setdefault(q, []).append(vp_int(n, q))
    return invariants_from_primary({q: sorted(e, reverse=True) for q, e in primary.items()})


def abelian_invariants(table: FiniteGroupTable) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ... | d_k`` (all > 1); ``[]`` for the trivial group.

    For each prime ``q`` the number of elements killed by ``q^j`` is
    ``q^(sum_i min(e_i, j))``, which determines the exponents ``e_i`` of the
    cyclic ``q``-primary factors.
    """
    n = table.order
    orders = Counter(table.element_order(x) for x in table.elements)
    primary: dict[int, list[int]] = {}
    for q in _prime_factors(n):
        top = vp_int(n, q)
        # r_j = log_q #{x : x^(q^j) = 1} = sum_i min(e_i, j)
        r = [0]
        for j in range(1, top + 1):
            killed = sum(c for o, c in orders.items() if (q**j) % o == 0)
            r.append(round(math.log(killed, q)))
        # number of factors with e_i >= j is r_j - r_{j-1}
        at_least = [r[j] - r[j - 1] for j in range(1, top + 1)]
        exps = []
        for j in range(len(at_least)):
            nxt = at_least[j + 1] if j + 1 < len(at_least) else 0
            exps += [j + 1] * (at_least[j] - nxt)
        primary[q] = sorted(exps, reverse=True)
    result = invariants_from_primary(primary)
    if math.prod(result) != n:
        raise ArithmeticError("element-order statistics inconsistent with an abelian group")
    return result


def _normal_point(w1: int, w0: int, p: int) -> tuple[int, int]:
    if w1 % p:
        return 1, w0 * pow(w1, -1, p) % p
    if w0 % p:
        return 0, 1
    raise ValueError("zero vector")


def _check_q(params: RecurrenceParams, p: int):
    if params.Q % p == 0:
        raise ValueError(f"Q not a unit mod {p}")


def fp_group_mul(params: RecurrenceParams, p: int):
    P, Q = params.P, params.Q

    def mul(a, b):
        a1, a0 = a
        b1, b0 = b
        return _normal_point((a1 * b1 - Q * a0 * b0) % p, (a0 * b1 + a1 * b0 - P * a0 * b0) % p, p)

    return mul


def residue_type(params: RecurrenceParams, p: int) -> str:
    """Factorization type of ``f mod p``: ``"irreducible"``, ``"split"`` or ``"double"``."""
    if p == 2:
        if params.P % 2 == 0:
            return "double"
        return "irreducible" if params.Q % 2 else "split"
    chi = params.D % p
    if chi == 0:
        return "double"
    return "split" if pow(chi, (p - 1) // 2, p) == 1 else "irreducible"


def expected_fp_order(params: RecurrenceParams, p: int) -> int:
    return {"irreducible": p + 1, "split": p - 1, "double": p}[residue_type(params, p)]


def enumerate_G(params: RecurrenceParams, p: int) -> FiniteGroupTable:
    """``G_{F_p}(f)``: points of ``P^1(F_p)`` with nonzero norm form, under the seed-vector product."""
    p = as_prime(p)
    _check_q(params, p)
    P, Q = params.P, params.Q
    points = [(1, x) for x in range(p)] + [(0, 1)]
    elements = [(w1, w0) for w1, w0 in points if (w1 * w1 - P * w0 * w1 + Q * w0 * w0) % p]
    return FiniteGroupTable(elements, fp_group_mul(params, p), (1, 0), name=f"G_F{p}{params}")


@dataclass(frozen=True)
class RankResult:
    """Rank of apparition: least ``r > 0`` with ``p | F_r``.

    ``witness`` is the index found by iterating the Lucas sequence;
    ``generator_order`` is the order of ``[0, 1]`` in ``G_{F_p}(f)`` found by
    repeated group multiplication.  The two must agree.
    """

    p: int
    r: int
    witness: int
    generator_order: int

    @property
    def consistent(self) -> bool:
        return self.witness == self.r == self.generator_order


def rank(params: RecurrenceParams, p: int) -> RankResult:
    p = as_prime(p)
    _check_q(params, p)
    P, Q = params.P % p, params.Q % p
    f_prev, f_cur, n = 0, 1, 1
    while f_cur:
        f_prev, f_cur = f_cur, (P * f_cur - Q * f_prev) % p
        n += 1
    mul = fp_group_mul(params, p)
    g = x = (0, 1)
    order = 1
    while x != (1, 0):
        x = mul(x, g)
        order += 1
    return RankResult(p, n, n, order)


def coset_representatives(table: FiniteGroupTable, generator) -> dict:
    """Each element mapped to the least element of its coset of ``<generator>``."""
    canon = {}
    for x in table.elements:
        if x in canon:
            continue
        orbit = [x]
        y = table.mul(x, generator)
        while y != x:
            orbit.append(y)
            y = table.mul(y, generator)
        rep = min(orbit)
        for y in orbit:
            canon[y] = rep
    return canon


def enumerate_Gstar(params: RecurrenceParams, p: int, g_table: Optional[FiniteGroupTable] = None) -> FiniteGroupTable:
    """``G*_{F_p}(f) = G_{F_p}(f) / <[0, 1]>``; elements are lexicographically least coset members."""
    table = g_table or enumerate_G(params, p)
    canon = coset_representatives(table, (0, 1))
    reps = sorted(set(canon.values()))

    def mul(a, b):
        return canon[table.mul(a, b)]

    return FiniteGroupTable(reps, mul, canon[table.identity], name=f"G*_F{p}{params}")


def integral_generator(m: int, choice: str = "auto") -> tuple[int, int]:
    """``(b, c)`` with ``omega^2 = b*omega + c``.

    ``"half"`` is ``(1 + sqrt m)/2`` (needs ``m = 1 mod 4``), ``"sqrt"`` is
    ``sqrt m``, ``"auto"`` is the ring-of-integers generator.
    """
    if choice == "auto":
        choice = "half" if m % 4 == 1 else "sqrt"
    if choice == "half":
        if m % 4 != 1:
            raise ValueError("(1 + sqrt m)/2 is integral only for m = 1 mod 4")
        return 1, (m - 1) // 4
    if choice == "sqrt":
        return 0, m
    raise ValueError(f"unknown generator {choice!r}")


def unit_quotient_table(params: RecurrenceParams, p: int, k: Optional[int] = None, generator: str = "auto") -> FiniteGroupTable:
    """``(O/p^k)^x / (Z/p^k)^x`` for ``O = Z[omega]``, elements ``x + y*omega`` as pairs mod ``p^k``.

    Every coset has a representative ``(1, y)`` or ``(x, 1)`` with ``p | x``;
    only those are enumerated.
    """
    p = as_prime(p)
    m, _ = squarefree_decomposition(params.D)
    if m == 1:
        raise ValueError("no quadratic order: f is reducible over Q")
    if k is None:
        k = local_conductor_exponent(params, p)
    b, c = integral_generator(m, generator)
    if generator == "sqrt" and p == 2 and m % 4 == 1:
        raise ValueError("Z[sqrt m] is not maximal at 2 when m = 1 mod 4")
    mod = p**k

    def canon(x, y):
        x, y = x % mod, y % mod
        if x % p:
            return 1, y * pow(x, -1, mod) % mod
        return x * pow(y, -1, mod) % mod, 1

    def mul(u, v):
        x1, y1 = u
        x2, y2 = v
        # (x1 + y1 w)(x2 + y2 w) with w^2 = b w + c
        return canon(x1 * x2 + c * y1 * y2, x1 * y2 + y1 * x2 + b * y1 * y2)

    def is_unit(x, y):
        # norm of x + y w is x^2 + b x y - c y^2
        return (x * x + b * x * y - c * y * y) % p != 0

    if k == 0:
        return FiniteGroupTable([(0, 0)], lambda u, v: (0, 0), (0, 0), name="trivial")
    elements = [(1, y) for y in range(mod) if is_unit(1, y)]
    elements += [(x, 1) for x in range(0, mod, p) if is_unit(x, 1)]
    return FiniteGroupTable(elements, mul, (1, 0), name=f"(O/{p}^{k})^x/(Z/{p}^{k})^x")


def unit_quotient(params: RecurrenceParams, p: int, k: Optional[int] = None, generator: str = "auto") -> list[int]:
    """Invariant factors of ``(O_F/p^k)^x / (Z/p^k Z)^x``.

    ``k`` defaults to the exponent of ``p`` in the conductor of ``Z[theta_1]``,
    which is ``floor(s/2)`` for odd ``p``.
    """
    return abelian_invariants(unit_quotient_table(params, p, k, generator))


def integer_unit_table(p: int, k: int) -> FiniteGroupTable:
    """``(Z/p^k Z)^x``."""
    mod = p**k
    if k == 0:
        return FiniteGroupTable([0], lambda a, b: 0, 0, name="trivial")
    elements = [x for x in range(1, mod) if x % p]
    return FiniteGroupTable(elements, lambda a, b: a * b % mod, 1 % mod, name=f"(Z/{p}^{k})^x")


def unit_quotient_formula(params: RecurrenceParams, p: int) -> Optional[list[list[int]]]:
    """Closed-form candidates for the unit quotient, or ``None`` outside the formula's range (``p = 2``, ``s >= 2``).

    Inert, even ``s``: cyclic of order ``p^(s/2-1)(p+1)``.  Split: ``p^(s/2-1)(p-1)``.
    Ramified, odd ``s``: ``p^floor(s/2)``, and for ``p = 3`` alternatively
    ``Z/3 x Z/3^(floor(s/2)-1)``.
    """
    from .arith import Splitting, splitting_type

    sp = splitting_type(params, p)
    if sp is Splitting.RATIONAL:
        raise ValueError("no quadratic order: f is reducible over Q")
    s, _ = params.p_part(p)
    if s == 0 or (sp is Splitting.RAMIFIED and s == 1):
        return [[]]
    if p == 2:
        return None
    if sp is Splitting.INERT:
        return [invariants_of_product([p ** (s // 2 - 1) * (p + 1)])]
    if sp is Splitting.SPLIT:
        return [invariants_of_product([p ** (s // 2 - 1) * (p - 1)])]
    k = s // 2
    options = [invariants_of_product([p**k])]
    if p == 3:
        alt = invariants_of_product([3, 3 ** (k - 1)])
        if alt not in options:
            options.append(alt)
    return options


__all__ = [
    "FiniteGroupTable",
    "RankResult",
    "abelian_invariants",
    "coset_representatives",
    "enumerate_G",
    "enumerate_Gstar",
    "expected_fp_order",
    "field_discriminant",
    "integer_unit_table",
    "invariants_of_product",
    "rank",
    "residue_type",
    "unit_quotient",
    "unit_quotient_formula",
    "unit_quotient_table",
]
