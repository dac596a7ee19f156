"""Classes of sequences modulo unit scaling (``~``) and modulo scaling plus shift (``~*``).

Over the rationals (and the localization at ``p``) a class is stored through a
coprime-integer seed vector; over ``F_p`` through the projective point with the
first nonzero coordinate equal to one.  Shift-classes over ``F_p`` get a canonical
form (the lexicographically least point of the finite shift orbit); over the
rationals only a decision procedure is provided, built on the embedding
``[w_1, w_0] -> w_1 - w_0 theta_1`` into the quadratic algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional, Union

from .arith import QuadElem, Scalar, valuations_above_p, vp_rat
from .recurrence import (
    ClassVector,
    RingCtx,
    b_act,
    inv,
    lambda_norm,
    mul,
)


def _normal_pair(w1: Scalar, w0: Scalar, ctx: RingCtx) -> tuple:
    if ctx.kind == "Fp":
        p = ctx.p
        if w1 % p:
            return 1, w0 * pow(w1, -1, p) % p
        if w0 % p:
            return 0, 1
        raise ValueError("zero vector has no projective class")
    if type(w1) is int and type(w0) is int:
        g = math.gcd(w1, w0)
        if g == 0:
            raise ValueError("zero vector has no projective class")
        a, b = w1 // g, w0 // g
        return (-a, -b) if a < 0 or (a == 0 and b < 0) else (a, b)
    w1, w0 = Fraction(w1), Fraction(w0)
    den = math.lcm(w1.denominator, w0.denominator)
    a, b = int(w1 * den), int(w0 * den)
    g = math.gcd(a, b)
    if g == 0:
        raise ValueError("zero vector has no projective class")
    a, b = a // g, b // g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return a, b


@dataclass(frozen=True)
class GClass:
    """A class of ``G_R(f)``: seed vectors up to unit scaling."""

    rep: ClassVector

    @property
    def ctx(self) -> RingCtx:
        return self.rep.ctx

    @property
    def params(self):
        return self.rep.params

    @property
    def pair(self) -> tuple:
        return self.rep.pair

    def __mul__(self, other: GClass) -> GClass:
        return class_mul(self, other)

    def __str__(self):
        return f"[{self.rep.w1}, {self.rep.w0}]"


@dataclass(frozen=True)
class GStarClass:
    """A class of ``G*_R(f)``: seed vectors up to unit scaling and shifts.

    Over ``F_p`` ``orbit_rep`` is canonical; over ``Q`` and ``Z_(p)`` it is just
    the stored representative and equality must go through
    :func:`decide_star_equiv`.
    """

    orbit_rep: GClass

    @property
    def ctx(self) -> RingCtx:
        return self.orbit_rep.ctx

    def __eq__(self, other):
        if not isinstance(other, GStarClass):
            return NotImplemented
        if self.ctx.kind == "Fp":
            return self.orbit_rep == other.orbit_rep
        return decide_star_equiv(self.orbit_rep.rep, other.orbit_rep.rep).equivalent

    def __hash__(self):
        if self.ctx.kind == "Fp":
            return hash(self.orbit_rep)
        raise TypeError("shift classes over Q have no canonical form to hash")

    def __mul__(self, other: GStarClass) -> GStarClass:
        return class_mul(self, other)

    def __str__(self):
        return f"[{self.orbit_rep.rep.w1}, {self.orbit_rep.rep.w0}]*"


def normalize(v: ClassVector) -> GClass:
    """Canonical representative of the ``~``-class of ``v``."""
    if not v.is_unit():
        raise ValueError(f"{v} is not in V_f(R)^x over {v.ctx}")
    return GClass(v.with_coords(*_normal_pair(v.w1, v.w0, v.ctx)))


def star_normalize(v: ClassVector) -> GStarClass:
    """Shift class of ``v``; canonical (lexicographic orbit minimum) over ``F_p``."""
    g = normalize(v)
    if v.ctx.kind != "Fp":
        return GStarClass(g)
    return GStarClass(GClass(g.rep.with_coords(*min(shift_orbit(g.rep)))))


def shift_orbit(v: ClassVector) -> list[tuple]:
    """Normalized points ``B^k v`` for ``k = 0, 1, ...`` until the orbit closes (``F_p`` only)."""
    if v.ctx.kind != "Fp":
        raise ValueError("shift orbits are finite only over F_p")
    p, P, Q = v.ctx.p, v.params.P, v.params.Q
    start = _normal_pair(v.w1, v.w0, v.ctx)
    orbit = [start]
    w1, w0 = start
    while True:
        w1, w0 = _normal_pair((P * w1 - Q * w0) % p, w1, v.ctx)
        if (w1, w0) == start:
            return orbit
        orbit.append((w1, w0))


def _proportional(a: ClassVector, b: ClassVector) -> Optional[Scalar]:
    """``lam`` with ``a = lam * b`` if it exists (and is nonzero)."""
    if a.ctx.coerce(a.w1 * b.w0 - a.w0 * b.w1) != 0:
        return None
    if a.ctx.kind == "Fp":
        p = a.ctx.p
        if b.w1 % p:
            return a.w1 * pow(b.w1, -1, p) % p
        return a.w0 * pow(b.w0, -1, p) % p
    if b.w1 != 0:
        return Fraction(a.w1) / Fraction(b.w1)
    return Fraction(a.w0) / Fraction(b.w0)


def _check_compatible(a: ClassVector, b: ClassVector):
    if a.params != b.params or a.ctx != b.ctx:
        raise ValueError("classes over different recurrences or rings")


def decide_equiv(a: ClassVector, b: ClassVector) -> bool:
    """``a = lam * b`` for some unit ``lam`` of the ring."""
    _check_compatible(a, b)
    lam = _proportional(a, b)
    return lam is not None and lam != 0 and a.ctx.is_unit(lam)


@dataclass(frozen=True)
class StarDecision:
    """Outcome of a shift-equivalence test: ``a = lam * B^nu b`` when ``equivalent``."""

    equivalent: bool
    nu: Optional[int] = None
    lam: Optional[Scalar] = None

    def __bool__(self):
        return self.equivalent


def _torsion_order(tau) -> Optional[int]:
    """Order of ``tau`` if it is a root of unity (orders 1, 2, 3, 4, 6 are the only options)."""
    for n in (1, 2, 3, 4, 6):
        t = tau**n
        if isinstance(t, QuadElem):
            if t.is_rational() and t.rational_value() == 1:
                return n
        elif t == 1:
            return n
    return None


def _log_abs(alpha: QuadElem) -> Decimal:
    """``log |alpha|`` in the real embedding ``sqrt(m) > 0`` of a real quadratic field."""
    x, y, m = alpha.x, alpha.y, alpha.m
    with localcontext() as c:
        c.prec = 60
        big = (Decimal(abs(x.numerator)) / Decimal(x.denominator)) + (
            Decimal(abs(y.numerator)) / Decimal(y.denominator)
        ) * Decimal(m).sqrt()
        # |x| + |y| sqrt(m) is the larger of |alpha|, |alpha^sigma|; their product is |N(alpha)|
        log_big = big.ln()
        log_norm = (Decimal(abs(alpha.norm().numerator)) / Decimal(alpha.norm().denominator)).ln()
        same_sign = (x >= 0) == (y >= 0) or x == 0 or y == 0
        return log_big if same_sign else log_norm - log_big


def _candidate_shifts(gamma, tau, params) -> list[int]:
    """Candidate exponents ``nu`` with ``gamma`` possibly in ``Q^x * tau^nu``.

    ``gamma`` and ``tau`` are rationals (reducible ``f``) or quadratic field
    elements.  ``tau`` is the image of one shift step.
    """
    if isinstance(tau, Fraction):
        order = _torsion_order(tau)
        if order is not None:
            return list(range(order))
        # Q^x / <tau>: pin nu by a prime where tau has nonzero valuation
        for ell in _prime_factors(tau.numerator * tau.denominator):
            vt = vp_rat(tau, ell)
            if vt:
                vg = vp_rat(gamma, ell)
                return [vg // vt] if vg % vt == 0 else []
        raise AssertionError("non-torsion rational must have a prime factor")
    # quadratic field: 1 - sigma kills the rationals
    rho = gamma / gamma.conj()
    t = tau / tau.conj()
    order = _torsion_order(t)
    if order is not None:
        return list(range(order))
    for ell in _prime_factors(params.Q):
        vals_t = valuations_above_p(t, ell)
        if len(vals_t) == 2 and vals_t[0] != 0:
            vals_r = valuations_above_p(rho, ell)
            return [vals_r[0] // vals_t[0]] if vals_r[0] % vals_t[0] == 0 else []
    if params.D < 0:
        raise AssertionError("non-torsion shift in an imaginary field must move a split prime")
    lt = _log_abs(t)
    if lt == 0:
        raise AssertionError("|theta_1| = |theta_2| forces a torsion shift")
    guess = int((_log_abs(rho) / lt).to_integral_value())
    return [guess, guess - 1, guess + 1]


def _prime_factors(n: int) -> list[int]:
    n = abs(n)
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


def _psi_value(v: ClassVector):
    """``w_1 - w_0 theta_1`` (irreducible ``f``) or the ratio of the two embeddings (reducible)."""
    th = QuadElem.theta1(v.params)
    alpha = th.scalar(v.w1) - th * Fraction(v.w0)
    if th.split:
        return alpha.x / alpha.y
    return alpha


def decide_star_equiv(a: ClassVector, b: ClassVector) -> StarDecision:
    """Decide whether ``a = lam * B^nu b`` for a unit ``lam`` and an integer ``nu``.

    Over ``F_p`` the finite shift orbit of ``b`` is searched.  Over ``Q`` and
    ``Z_(p)`` the question becomes whether ``psi(a)/psi(b)`` lies in
    ``Q^x <theta_2>`` (``<theta_2/theta_1>`` when ``f`` splits).  The exponent is
    pinned by a valuation at a prime moved by the shift, by a logarithm in the
    real embedding, or by the finite order of a torsion shift; every candidate
    is then checked exactly.
    """
    _check_compatible(a, b)
    if not (a.is_unit() and b.is_unit()):
        raise ValueError("both vectors must lie in V_f(R)^x")
    ctx = a.ctx
    if ctx.kind == "Fp":
        target = _normal_pair(a.w1, a.w0, ctx)
        for nu, pt in enumerate(shift_orbit(b)):
            if pt == target:
                return StarDecision(True, nu, _proportional(a, b_act(b, nu)))
        return StarDecision(False)

    th = QuadElem.theta1(a.params)
    gamma = _psi_value(a) / _psi_value(b)
    # B acts as multiplication by P - theta_1 = theta_2; on the ratio map as theta_2/theta_1
    tau = th.y / th.x if th.split else th.conj()
    for nu in _candidate_shifts(gamma, tau, a.params):
        shifted = b_act(b, nu)
        lam = _proportional(a, shifted)
        if lam is not None and lam != 0 and ctx.is_unit(lam):
            return StarDecision(True, nu, lam)
    return StarDecision(False)


def class_mul(a: Union[GClass, GStarClass], b: Union[GClass, GStarClass]):
    """Product of classes, computed on representatives and renormalized."""
    if isinstance(a, GStarClass) and isinstance(b, GStarClass):
        return star_normalize(mul(a.orbit_rep.rep, b.orbit_rep.rep))
    if isinstance(a, GClass) and isinstance(b, GClass):
        return normalize(mul(a.rep, b.rep))
    raise TypeError("cannot multiply a G-class with a G*-class")


def class_inv(a: GClass) -> GClass:
    return normalize(inv(a.rep))


def psi_map(a: GClass):
    """Image of the class in ``F^x / Q^x`` (irreducible ``f``) or in ``Q^x`` (reducible ``f``).

    The field case returns the normalized :class:`QuadElem` representative of
    ``w_1 - w_0 theta_1`` modulo rationals; the split case returns the rational
    ``(w_1 - w_0 theta_1)/(w_1 - w_0 theta_2)``.
    """
    if a.ctx.kind != "Q":
        raise ValueError("psi_map is defined on classes over Q")
    val = _psi_value(a.rep)
    return val if isinstance(val, Fraction) else val.normalized()


def same_mod_rationals(alpha: QuadElem, beta: QuadElem) -> bool:
    return (alpha / beta).is_rational()


def lambda_ratio_obstructed(a: ClassVector, b: ClassVector) -> bool:
    """True when ``Lambda(a)/Lambda(b)`` is not of the form ``lam^2 Q^n``: then ``a`` and ``b`` are not shift-equivalent."""
    r = Fraction(lambda_norm(a)) / Fraction(lambda_norm(b))
    return not (_is_rational_square(r) or _is_rational_square(r / a.params.Q))


def _is_rational_square(r: Fraction) -> bool:
    if r <= 0:
        return False
    return all(math.isqrt(n) ** 2 == n for n in (r.numerator, r.denominator))
