"""Degree-2 recurrences ``w_{n+2} = P w_{n+1} - Q w_n`` and the group law on their seeds.

A sequence is identified with its seed vector ``(w_1, w_0)``, which in turn is
the element ``w_1 - w_0 t`` of ``R[t]/(t^2 - P t + Q)``.  Scalars live in one of
three ring contexts: the rationals, the rationals localized at ``p``, or the
prime field ``F_p`` (canonical residues in ``[0, p)``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import Scalar, as_prime, split_p_power, squarefree_decomposition, vp_rat


@dataclass(frozen=True)
class RecurrenceParams:
    """Coefficients of ``f(t) = t^2 - P t + Q``."""

    P: int
    Q: int

    def __post_init__(self):
        if self.Q == 0:
            raise ValueError("Q must be nonzero")
        if self.D == 0:
            raise ValueError("degenerate discriminant")

    @property
    def D(self) -> int:
        return self.P * self.P - 4 * self.Q

    def p_part(self, p: int) -> tuple[int, int]:
        """``(s, D0)`` with ``D = p**s * D0``, ``p`` not dividing ``D0``."""
        return split_p_power(self.D, p)

    def squarefree(self) -> tuple[int, int]:
        """``(m, a)`` with ``D = m * a**2``, ``m`` squarefree."""
        return squarefree_decomposition(self.D)

    @property
    def reducible(self) -> bool:
        return self.squarefree()[0] == 1

    def __str__(self):
        return f"(P={self.P}, Q={self.Q})"


@dataclass(frozen=True)
class RingCtx:
    """Coefficient ring: ``"Q"`` (rationals), ``"Zp"`` (localization at p) or ``"Fp"``."""

    kind: str = "Q"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Q", "Zp", "Fp"):
            raise ValueError(f"unknown ring {self.kind!r}")
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rationals take no prime")
        else:
            object.__setattr__(self, "p", as_prime(self.p))

    @classmethod
    def parse(cls, text: str) -> RingCtx:
        """Parse ``Q``, ``Zp:7`` or ``Fp:7``."""
        kind, _, p = text.partition(":")
        return cls(kind, int(p) if p else None)

    def coerce(self, x) -> Scalar:
        if type(x) is int:
            return x % self.p if self.kind == "Fp" else x
        x = Fraction(x)
        if self.kind == "Fp":
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if self.kind == "Zp" and x.denominator % self.p == 0:
            raise ValueError(f"{x} is not a {self.p}-adic integer")
        return x.numerator if x.denominator == 1 else x

    def is_unit(self, x: Scalar) -> bool:
        if self.kind == "Fp":
            return x % self.p != 0
        if x == 0:
            return False
        return self.kind == "Q" or vp_rat(x, self.p) == 0

    def inverse(self, x: Scalar) -> Scalar:
        if not self.is_unit(x):
            raise ZeroDivisionError("not invertible in this ring")
        if self.kind == "Fp":
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def __str__(self):
        return self.kind if self.kind == "Q" else f"{self.kind}:{self.p}"


RATIONALS = RingCtx()


def localized(p: int) -> RingCtx:
    return RingCtx("Zp", p)


def prime_field(p: int) -> RingCtx:
    return RingCtx("Fp", p)


@dataclass(frozen=True)
class ClassVector:
    """Seed vector ``(w_1, w_0)`` of a sequence over a ring context."""

    w1: Scalar
    w0: Scalar
    params: RecurrenceParams
    ctx: RingCtx = field(default=RATIONALS)

    def __post_init__(self):
        object.__setattr__(self, "w1", self.ctx.coerce(self.w1))
        object.__setattr__(self, "w0", self.ctx.coerce(self.w0))
        if self.ctx.kind != "Q" and self.params.Q % self.ctx.p == 0:
            raise ValueError(f"Q not a unit mod {self.ctx.p}")

    @property
    def pair(self) -> tuple:
        return self.w1, self.w0

    def with_coords(self, w1, w0) -> ClassVector:
        return ClassVector(w1, w0, self.params, self.ctx)

    def scale(self, lam) -> ClassVector:
        lam = self.ctx.coerce(lam)
        return self.with_coords(self.w1 * lam, self.w0 * lam)

    def is_unit(self) -> bool:
        """Membership in ``V_f(R)^x``: the norm form is a unit of the ring."""
        return self.ctx.is_unit(lambda_norm(self))

    def __mul__(self, other: ClassVector) -> ClassVector:
        return mul(self, other)

    def __str__(self):
        return f"({self.w1}, {self.w0})"


@dataclass(frozen=True)
class SeqWindow:
    """Consecutive terms ``w_base, w_{base+1}, ...``."""

    base_index: int
    terms: tuple
    params: RecurrenceParams

    def satisfies_recurrence(self, ctx: RingCtx = RATIONALS) -> bool:
        P, Q = self.params.P, self.params.Q
        t = self.terms
        return all(
            ctx.coerce(t[i + 2] - P * t[i + 1] + Q * t[i]) == 0 for i in range(len(t) - 2)
        )


def _check_same(a: ClassVector, b: ClassVector):
    if a.params != b.params:
        raise ValueError(f"mismatched recurrences {a.params} and {b.params}")
    if a.ctx != b.ctx:
        raise ValueError(f"mismatched rings {a.ctx} and {b.ctx}")


def _mat_mul(A, B, ctx: RingCtx):
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    entries = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    a, b, c, d = (ctx.coerce(x) for x in entries)
    return (a, b), (c, d)


def shift_matrix_power(params: RecurrenceParams, n: int, ctx: RingCtx = RATIONALS):
    """``B**n`` for the companion matrix ``B = [[P, -Q], [1, 0]]``, by binary powering."""
    P, Q = params.P, params.Q
    if n >= 0:
        base = ((ctx.coerce(P), ctx.coerce(-Q)), (ctx.coerce(1), ctx.coerce(0)))
    else:
        if not ctx.is_unit(ctx.coerce(Q)):
            raise ZeroDivisionError("Q not invertible")
        qi = ctx.inverse(ctx.coerce(Q))
        # B^-1 = Q^-1 [[0, Q], [-1, P]]
        base = ((ctx.coerce(0), ctx.coerce(1)), (ctx.coerce(-qi), ctx.coerce(P * qi)))
        n = -n
    one, zero = ctx.coerce(1), ctx.coerce(0)
    result = ((one, zero), (zero, one))
    while n:
        if n & 1:
            result = _mat_mul(result, base, ctx)
        base = _mat_mul(base, base, ctx)
        n >>= 1
    return result


def term_pair(v: ClassVector, n: int) -> tuple:
    """``(w_{n+1}, w_n)``."""
    (a, b), (c, d) = shift_matrix_power(v.params, n, v.ctx)
    ctx = v.ctx
    return ctx.coerce(a * v.w1 + b * v.w0), ctx.coerce(c * v.w1 + d * v.w0)


def term(v: ClassVector, n: int) -> Scalar:
    """The term ``w_n`` for any integer ``n``."""
    return term_pair(v, n)[1]


def window(v: ClassVector, start: int, count: int) -> SeqWindow:
    """``count`` consecutive terms beginning at index ``start``."""
    if count <= 0:
        return SeqWindow(start, (), v.params)
    nxt, cur = term_pair(v, start)
    terms = [cur, nxt]
    P, Q = v.params.P, v.params.Q
    while len(terms) < count:
        terms.append(v.ctx.coerce(P * terms[-1] - Q * terms[-2]))
    return SeqWindow(start, tuple(terms[:count]), v.params)


def lucas_pair(params: RecurrenceParams, ctx: RingCtx = RATIONALS) -> tuple[ClassVector, ClassVector]:
    """The Lucas sequence (seeds 0, 1) and its companion (seeds 2, P) as seed vectors."""
    return ClassVector(1, 0, params, ctx), ClassVector(params.P, 2, params, ctx)


def identity(params: RecurrenceParams, ctx: RingCtx = RATIONALS) -> ClassVector:
    return ClassVector(1, 0, params, ctx)


def lambda_norm(v: ClassVector) -> Scalar:
    """``w_1^2 - P w_0 w_1 + Q w_0^2``, the norm of ``w_1 - w_0 t``."""
    P, Q = v.params.P, v.params.Q
    return v.ctx.coerce(v.w1 * v.w1 - P * v.w0 * v.w1 + Q * v.w0 * v.w0)


def mul(a: ClassVector, b: ClassVector) -> ClassVector:
    """Product in ``R[t]/(f)`` transported to seed vectors."""
    _check_same(a, b)
    P, Q = a.params.P, a.params.Q
    return a.with_coords(
        a.w1 * b.w1 - Q * a.w0 * b.w0,
        a.w0 * b.w1 + a.w1 * b.w0 - P * a.w0 * b.w0,
    )


def inv(a: ClassVector) -> ClassVector:
    lam = lambda_norm(a)
    if not a.ctx.is_unit(lam):
        raise ZeroDivisionError("not invertible in this ring")
    li = a.ctx.inverse(lam)
    return a.with_coords((a.w1 - a.params.P * a.w0) * li, -a.w0 * li)


def power(a: ClassVector, n: int) -> ClassVector:
    if n < 0:
        return power(inv(a), -n)
    result, base = identity(a.params, a.ctx), a
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base)
        n >>= 1
    return result


def b_act(a: ClassVector, nu: int) -> ClassVector:
    """Shift the underlying sequence by ``nu``: ``B**nu`` applied to the seed vector."""
    return a.with_coords(*term_pair(a, nu))


def laxton_mul(a: ClassVector, b: ClassVector) -> ClassVector:
    """Laxton's product of two sequences.

    With ``w_n = (A th1^n - B th2^n)/(th1 - th2)`` and likewise ``C, D`` for ``v``,
    the product has coefficients ``AC`` and ``BD``; expanding its first two
    terms gives the integral expressions below.
    """
    _check_same(a, b)
    P, Q = a.params.P, a.params.Q
    w1, w0, v1, v0 = a.w1, a.w0, b.w1, b.w0
    u0 = w0 * v1 + w1 * v0 - P * v0 * w0
    u1 = w1 * v1 - Q * v0 * w0
    return a.with_coords(u1, u0)
