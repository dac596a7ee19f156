"""Reduction modulo ``p``, the subgroups ``G(f,p) <= K(f,p) <= H(f,p)``, and structure predictions.

A class over the rationals is reduced through its coprime-integer
representative.  ``K`` is the set of classes whose norm form is a ``p``-unit,
``G`` those reducing to the identity, ``H`` those with a power in ``K``.  The
starred versions are their images modulo shifts.  :func:`predict_structure`
turns the closed-form case table into invariant factors and
:func:`crosscheck_structure` compares that against enumeration.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .arith import (
    QuadElem,
    Splitting,
    as_prime,
    local_conductor_exponent,
    splitting_type,
    valuations_above_p,
    vp_int,
)
from .equivalence import GClass, GStarClass, normalize
from .finite import (
    coset_representatives,
    enumerate_G,
    enumerate_Gstar,
    integer_unit_table,
    invariants_of_product,
    rank,
    unit_quotient,
)
from .recurrence import ClassVector, RecurrenceParams, lambda_norm, mul

OUTSIDE = "outside G_Fp"


def _rep(a: Union[GClass, GStarClass, ClassVector]) -> ClassVector:
    if isinstance(a, GStarClass):
        a = a.orbit_rep
    if isinstance(a, GClass):
        a = a.rep
    if a.ctx.kind != "Q":
        raise ValueError("classes must be taken over Q")
    return normalize(a).rep


def _check_q(params: RecurrenceParams, p: int):
    if params.Q % p == 0:
        raise ValueError(f"Q not a unit mod {p}")


def _point(w1: int, w0: int, p: int) -> tuple[int, int]:
    if w1 % p:
        return 1, w0 * pow(w1, -1, p) % p
    return 0, 1


def reduce_p(a, p: int) -> tuple[int, int]:
    """Image of a rational class in ``P^1(F_p)``, first nonzero coordinate scaled to one."""
    p = as_prime(p)
    v = _rep(a)
    return _point(int(v.w1), int(v.w0), p)


def in_K(a, p: int) -> bool:
    v = _rep(a)
    return int(lambda_norm(v)) % p != 0


def in_G(a, p: int) -> bool:
    return reduce_p(a, p) == (1, 0)


def generator_orbit(params: RecurrenceParams, p: int) -> set:
    """Points of the cyclic subgroup generated by ``[0, 1]`` in ``G_{F_p}(f)``."""
    table = enumerate_G(params, p)
    out, x = {(1, 0)}, (0, 1)
    while x != (1, 0):
        out.add(x)
        x = table.mul(x, (0, 1))
    return out


def in_Gstar(a, p: int, orbit: Optional[set] = None) -> bool:
    """Whether the shift class of ``a`` lies in ``G*(f,p)``: ``a`` is in ``K`` and reduces into ``<[0,1]>``."""
    v = _rep(a)
    if not in_K(v, p):
        return False
    orbit = orbit if orbit is not None else generator_orbit(v.params, p)
    return reduce_p(v, p) in orbit


def has_zero_term(a, p: int, length: Optional[int] = None) -> bool:
    """Some term ``w_n`` with ``0 <= n < length`` vanishes mod ``p`` (the neighbouring term is then a unit).

    ``length`` defaults to ``r(p) + 1``, enough to cover a full period of zeros.
    """
    v = _rep(a)
    P, Q = v.params.P, v.params.Q
    if length is None:
        length = rank(v.params, p).r + 1
    w0, w1 = int(v.w0) % p, int(v.w1) % p
    for _ in range(length):
        if w0 == 0:
            return w1 != 0
        w0, w1 = w1, (P * w1 - Q * w0) % p
    return False


def valuation_split(a, p: int) -> int:
    """``v_P(alpha) - v_{P^sigma}(alpha)`` for ``alpha = w_1 - w_0 theta_1``; only for split ``p`` or reducible ``f``."""
    v = _rep(a)
    th = QuadElem.theta1(v.params)
    alpha = th.scalar(v.w1) - th * Fraction(v.w0)
    vals = valuations_above_p(alpha, p)
    if len(vals) != 2:
        raise ValueError(f"{p} does not split")
    return vals[0] - vals[1]


def in_H(a, p: int) -> bool:
    """Some power of the class lies in ``K``; decided from valuations, without searching powers."""
    v = _rep(a)
    sp = splitting_type(v.params, p)
    if sp in (Splitting.INERT, Splitting.RAMIFIED):
        return True
    return valuation_split(v, p) == 0


def power_in_K(a, p: int, bound: int) -> Optional[int]:
    """Least ``1 <= n <= bound`` with ``a^n`` in ``K``, by repeated exact multiplication."""
    v = _rep(a)
    x = v
    for n in range(1, bound + 1):
        if in_K(x, p):
            return n
        x = normalize(mul(x, v)).rep
    return None


@dataclass
class MembershipReport:
    """Subgroup memberships of one rational class at one prime."""

    cls: GClass
    p: int
    in_K: bool
    in_G: bool
    in_H: bool
    in_Gstar: bool
    valuation_data: tuple
    reduced_point: Union[tuple, str]
    lam_valuation: int

    def as_dict(self) -> dict:
        return {
            "class": [int(self.cls.rep.w1), int(self.cls.rep.w0)],
            "p": self.p,
            "in_K": self.in_K,
            "in_G": self.in_G,
            "in_H": self.in_H,
            "in_Gstar": self.in_Gstar,
            "lambda_valuation": self.lam_valuation,
            "valuation_data": list(self.valuation_data),
            "reduced_point": list(self.reduced_point) if isinstance(self.reduced_point, tuple) else self.reduced_point,
        }


def membership(a, p: int, orbit: Optional[set] = None) -> MembershipReport:
    p = as_prime(p)
    v = _rep(a)
    _check_q(v.params, p)
    lam = int(lambda_norm(v))
    k = lam % p != 0
    point = reduce_p(v, p)
    sp = splitting_type(v.params, p)
    # the norm of w_1 - w_0 theta_1 is Lambda, which settles one prime above p
    if sp is Splitting.INERT:
        vals = (vp_int(lam, p) // 2,)
    elif sp is Splitting.RAMIFIED:
        vals = (vp_int(lam, p),)
    else:
        th = QuadElem.theta1(v.params)
        vals = valuations_above_p(th.scalar(v.w1) - th * Fraction(v.w0), p)
    h = True if len(vals) == 1 else vals[0] == vals[1]
    return MembershipReport(
        cls=GClass(v),
        p=p,
        in_K=k,
        in_G=k and point == (1, 0),
        in_H=h,
        in_Gstar=k and in_Gstar(v, p, orbit),
        valuation_data=vals,
        reduced_point=point if k else OUTSIDE,
        lam_valuation=vp_int(lam, p),
    )


def sample_classes(params: RecurrenceParams, p: int, bound: int = 20) -> list[ClassVector]:
    """Deterministic sample: coprime integer seeds with ``|w_i| <= bound`` plus targeted witnesses.

    The witnesses are a class with ``v_P(alpha) != v_{P^sigma}(alpha)`` when ``p``
    splits (or ``f`` is reducible), and ``[-P, -2]`` (``alpha = sqrt D``), whose
    norm has odd valuation when ``p`` ramifies.
    """
    out, seen = [], set()

    def add(w1, w0):
        g = math.gcd(w1, w0)
        if g == 0:
            return
        w1, w0 = w1 // g, w0 // g
        if w1 < 0 or (w1 == 0 and w0 < 0):
            w1, w0 = -w1, -w0
        if (w1, w0) in seen:
            return
        v = ClassVector(w1, w0, params)
        if lambda_norm(v) == 0:
            return
        seen.add((w1, w0))
        out.append(v)

    for w1 in range(0, bound + 1):
        for w0 in range(-bound, bound + 1):
            if math.gcd(w1, w0) == 1:
                add(w1, w0)
    w = free_witness(params, p)
    if w is not None:
        add(*w.pair)
    add(-params.P, -2)
    return out


def free_witness(params: RecurrenceParams, p: int) -> Optional[ClassVector]:
    """A class ``[c, 1]`` with ``v_P(c - theta_1) != v_{P^sigma}(c - theta_1)``, or ``None`` if ``p`` does not split.

    Such ``c`` is an integer approximation of ``theta_1`` modulo ``P^(s/2+1)``,
    found as a solution of ``f(c) = 0 mod p^(s+1)``.
    """
    sp = splitting_type(params, p)
    if sp not in (Splitting.SPLIT, Splitting.RATIONAL):
        return None
    s, _ = params.p_part(p)
    mod = p ** (s // 2 + 1)
    target = p ** (s + 1)
    # exact rational roots give zero norm, so look past the first residue block
    for c in range(3 * mod):
        if (c * c - params.P * c + params.Q) % target == 0:
            v = ClassVector(c, 1, params)
            if lambda_norm(v) != 0 and valuation_split(v, p) != 0:
                return v
    return None


@dataclass
class ExactSequenceReport:
    """Sample checks of ``1 -> G(f,p) -> K(f,p) -> G_{F_p}(f) -> 1`` and its starred version."""

    params: RecurrenceParams
    p: int
    samples: int
    homomorphism: bool
    surjective: bool
    kernel: bool
    coset_count: int
    gstar_order: int
    zero_term: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.homomorphism and self.surjective and self.kernel and self.zero_term and self.coset_count == self.gstar_order


def _int_pair(v) -> tuple[int, int]:
    v = _rep(v)
    return int(v.w1), int(v.w0)


def _pair_mul(params: RecurrenceParams, a: tuple, b: tuple) -> tuple[int, int]:
    """Product of coprime integer seeds, renormalized to a coprime pair."""
    (a1, a0), (b1, b0) = a, b
    u1 = a1 * b1 - params.Q * a0 * b0
    u0 = a0 * b1 + a1 * b0 - params.P * a0 * b0
    g = math.gcd(u1, u0)
    return u1 // g, u0 // g


def _pair_norm(params: RecurrenceParams, a: tuple) -> int:
    w1, w0 = a
    return w1 * w1 - params.P * w0 * w1 + params.Q * w0 * w0


def verify_exact_sequence(params: RecurrenceParams, p: int, samples: Optional[list] = None, bound: int = 6) -> ExactSequenceReport:
    """Check the reduction sequence on sampled classes and on integer lifts of every finite-group element.

    The kernel check covers both directions: ``a`` reduces to the identity iff
    it lies in ``G(f,p)``, and two ``K``-classes have the same image iff their
    quotient reduces to the identity.  The starred count compares the number of
    distinct images in ``G*_{F_p}(f)`` of ``K``-classes with the order of that group.
    """
    p = as_prime(p)
    _check_q(params, p)
    table = enumerate_G(params, p)
    star = enumerate_Gstar(params, p, table)
    canon_star = coset_representatives(table, (0, 1))
    orbit = {x for x, rep in canon_star.items() if rep == canon_star[(1, 0)]}
    if samples is None:
        samples = sample_classes(params, p, bound)
    pairs = [_int_pair(v) for v in samples]
    failures = []

    # the points (1, x) and (0, 1) are already coprime integer pairs
    lifts = list(table.elements)
    surjective = all(_pair_norm(params, x) % p and _point(*x, p) == x for x in lifts)
    if not surjective:
        failures.append("some element of G_Fp has no lift in K")

    kclasses = [x for x in pairs if _pair_norm(params, x) % p] + lifts
    homomorphism = kernel = True
    for i, a in enumerate(kclasses):
        b = kclasses[(7 * i + 3) % len(kclasses)]
        ab = _pair_mul(params, a, b)
        ra, rb = _point(*a, p), _point(*b, p)
        if _pair_norm(params, ab) % p == 0 or _point(*ab, p) != table.mul(ra, rb):
            homomorphism = False
            failures.append(f"red_p not multiplicative on {a} * {b}")
        # a b^-1 lies in G(f,p) iff red a = red b; [b1, b0]^-1 = [b1 - P b0, -b0]
        q = _pair_mul(params, a, (b[0] - params.P * b[1], -b[1]))
        if (_point(*q, p) == (1, 0)) != (ra == rb):
            kernel = False
            failures.append(f"kernel mismatch for {a}, {b}")
    zero_term = True
    for v, x in zip(samples, pairs):
        in_star = _pair_norm(params, x) % p != 0 and _point(*x, p) in orbit
        if in_star != has_zero_term(v, p, len(orbit) + 1):
            zero_term = False
            failures.append(f"zero-term criterion disagrees on {x}")
    images = {canon_star[_point(*x, p)] for x in kclasses}
    return ExactSequenceReport(params, p, len(samples), homomorphism, surjective, kernel, len(images), star.order, zero_term, failures)


@dataclass
class Prediction:
    """Closed-form structure at ``p``.

    ``kstar_mod_gstar`` are the invariants of ``K*/G*``; ``g_mod_k`` lists the
    admissible invariant lists of the finite part of ``G/K`` (two entries only
    in the ambiguous ``p = 3`` ramified case) and ``free_rank`` its rank.
    """

    case: str
    in_range: bool
    kstar_mod_gstar: Optional[list]
    g_mod_k: Optional[list]
    free_rank: int
    h_equals_k: Optional[bool]
    g_equals_h: bool
    k_equals_gf: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _case(sp: Splitting, s: int, p: int) -> str:
    if s == 0:
        return "1" if sp is Splitting.INERT else "2"
    if s == 1:
        return "3"
    if sp is Splitting.RAMIFIED:
        return "4i"
    return "4ii" if sp is Splitting.INERT else "4iii"


def predict_structure(params: RecurrenceParams, p: int) -> Prediction:
    """The closed-form case table at ``p``.

    ``p`` not dividing ``D``: ``K*/G*`` is cyclic of order ``(p -/+ 1)/r(p)``
    and ``H = K``, with a free quotient when ``p`` splits.  ``p || D``:
    ``K* = G*(f,p)`` and ``G*/K*`` has order two.  ``p^s || D`` with ``s >= 2``:
    ``K* = G*(f,p)``, and ``H/K`` is cyclic of order ``2 p^floor(s/2)``
    (ramified), ``(p+1) p^(s/2-1)`` (inert) or ``(p-1) p^(s/2-1)`` (split,
    with a free quotient).  ``p = 2`` dividing ``D`` and ``p = 3`` ramified
    with ``s >= 3`` are outside the formulas; for the latter both listed
    groups are returned.
    """
    p = as_prime(p)
    _check_q(params, p)
    sp = splitting_type(params, p)
    s, _ = params.p_part(p)
    case = _case(sp, s, p)
    free = 1 if sp in (Splitting.SPLIT, Splitting.RATIONAL) else 0
    if s == 0:
        r = rank(params, p).r
        order = (p + 1) // r if sp is Splitting.INERT else (p - 1) // r
        return Prediction(case, True, invariants_of_product([order]), [[]], free, True, free == 0, order == 1)
    if p == 2:
        return Prediction("p=2", False, [], None, free, None, free == 0, True)
    if s == 1:
        return Prediction(case, True, [], [[2]], 0, False, True, True)
    k = s // 2
    if sp is Splitting.RAMIFIED:
        options = [invariants_of_product([2, p**k])]
        in_range = p != 3
        if p == 3:
            options.append(invariants_of_product([2, 3, 3 ** (k - 1)]))
        return Prediction(case, in_range, [], options, 0, False, True, True)
    order = (p + 1 if sp is Splitting.INERT else p - 1) * p ** (k - 1)
    return Prediction(case, True, [], [invariants_of_product([order])], free, order == 1, free == 0, True)


def g_mod_k_finite(params: RecurrenceParams, p: int) -> list[int]:
    """Invariants of the finite part of ``G/K`` computed by enumeration.

    Irreducible ``f``: the unit quotient ``(O/p^k)^x/(Z/p^k)^x`` at the conductor
    exponent, times ``Z/2`` when ``p`` ramifies.  Reducible ``f``:
    ``(Z/p^k)^x`` with ``p^k`` the ``p``-part of ``sqrt D``.
    """
    sp = splitting_type(params, p)
    s, _ = params.p_part(p)
    if sp is Splitting.RATIONAL:
        k = s // 2
        return integer_unit_table(p, k).invariant_factors if k else []
    orders = []
    k = local_conductor_exponent(params, p)
    if k:
        orders += unit_quotient(params, p, k)
    if sp is Splitting.RAMIFIED:
        orders.append(2)
    return invariants_of_product(orders)


@dataclass
class StructureReport:
    instance: dict
    predicted: Prediction
    computed: dict
    verdict: str
    notes: list = field(default_factory=list)


def _instance(params: RecurrenceParams, p: int) -> dict:
    s, d0 = params.p_part(p)
    return {"P": params.P, "Q": params.Q, "p": p, "s": s, "d0": d0, "splitting": str(splitting_type(params, p))}


def crosscheck_structure(params: RecurrenceParams, p: int, bound: int = 3) -> StructureReport:
    """Compare the prediction with enumeration and with witnesses on sampled classes.

    Checked: ``K*/G*`` against ``G*_{F_p}(f)``; the finite part of ``G/K``
    against the unit quotient; the free rank against a class with unequal
    valuations above ``p``; the torsion claim by finding, for every sampled
    class in ``H``, a power in ``K`` with exponent at most the predicted
    finite order; and the chain ``G <= K <= H``.
    """
    p = as_prime(p)
    _check_q(params, p)
    pred = predict_structure(params, p)
    table = enumerate_G(params, p)
    rk = rank(params, p)
    star = enumerate_Gstar(params, p, table)
    notes = []
    finite = g_mod_k_finite(params, p)
    witness = free_witness(params, p)
    free_rank = 1 if witness is not None else 0
    samples = sample_classes(params, p, bound)
    orbit = generator_orbit(params, p)
    exponent_bound = math.prod(finite) if finite else 1
    chain_ok = torsion_ok = True
    for v in samples:
        rep = membership(v, p, orbit)
        if (rep.in_G and not rep.in_K) or (rep.in_K and not rep.in_H) or (rep.in_Gstar and not rep.in_K):
            chain_ok = False
            notes.append(f"chain fails on {v}")
        if rep.in_H and not rep.in_K and power_in_K(v, p, exponent_bound) is None:
            torsion_ok = False
            notes.append(f"no power of {v} in K up to {exponent_bound}")
        if free_rank == 0 and not rep.in_H:
            torsion_ok = False
            notes.append(f"{v} outside H although no free part")
    computed = {
        "g_order": table.order,
        "rank": rk.r,
        "rank_consistent": rk.consistent,
        "gstar_order": star.order,
        "kstar_mod_gstar": star.invariant_factors,
        "g_mod_k": finite,
        "free_rank": free_rank,
        "chain": chain_ok,
        "torsion": torsion_ok,
    }
    sound = rk.consistent and chain_ok and torsion_ok
    if pred.in_range:
        agrees = (
            computed["kstar_mod_gstar"] == pred.kstar_mod_gstar
            and finite in pred.g_mod_k
            and free_rank == pred.free_rank
        )
        verdict = "match" if agrees and sound else "mismatch"
    else:
        verdict = "out-of-formula-range" if sound else "mismatch"
        if pred.g_mod_k is not None:
            branch = pred.g_mod_k.index(finite) if finite in pred.g_mod_k else None
            notes.append(f"enumerated branch: {branch}")
    if not sound:
        notes.append("internal consistency failure")
    return StructureReport(_instance(params, p), pred, computed, verdict, notes)


__all__ = [
    "ExactSequenceReport",
    "MembershipReport",
    "OUTSIDE",
    "Prediction",
    "StructureReport",
    "crosscheck_structure",
    "free_witness",
    "g_mod_k_finite",
    "generator_orbit",
    "has_zero_term",
    "in_G",
    "in_Gstar",
    "in_H",
    "in_K",
    "membership",
    "power_in_K",
    "predict_structure",
    "reduce_p",
    "sample_classes",
    "valuation_split",
    "verify_exact_sequence",
]
