"""Exact scalar arithmetic: rationals, primes, quadratic algebras, p-adic valuations.

Rationals are :class:`fractions.Fraction` throughout.  A :class:`QuadElem` is an
element of the two-dimensional etale algebra ``Q[t]/(f)``: either the field
``Q(sqrt m)`` or, when the discriminant is a rational square, the split algebra
``Q x Q`` stored through its two embeddings.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

Rat = Fraction
Scalar = Union[int, Fraction]

# Deterministic for n < 3.3e24 (Sorenson & Webster), which covers 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed witness set.

    Deterministic below 3.3e24; above that the same 13 witnesses are used and
    the answer is probabilistic.
    """
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(bound: int) -> list[int]:
    """All primes p < bound."""
    if bound <= 2:
        return []
    sieve = bytearray([1]) * bound
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound, i)))
    return [i for i, flag in enumerate(sieve) if flag]


@dataclass(frozen=True)
class PrimeP:
    """A rational prime, validated on construction."""

    p: int

    def __post_init__(self):
        p = int(self.p)
        if not is_prime(p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "p", p)

    def __int__(self):
        return self.p


def as_prime(p: int | PrimeP) -> int:
    return p.p if isinstance(p, PrimeP) else PrimeP(p).p


def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rat(q: Scalar, p: int | PrimeP) -> int:
    """Exponent of ``p`` in the nonzero rational ``q``."""
    p = as_prime(p)
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of zero")
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


def split_p_power(n: int, p: int) -> tuple[int, int]:
    """Return ``(s, n0)`` with ``n = p**s * n0`` and ``p`` not dividing ``n0``."""
    s = vp_int(n, p)
    return s, n // p**s


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Write ``n = m * a**2`` with ``m`` squarefree (sign carried by ``m``), ``a > 0``."""
    if n == 0:
        raise ValueError("degenerate discriminant")
    m = -1 if n < 0 else 1
    a = 1
    rest = abs(n)
    q = 2
    while q * q <= rest:
        e = 0
        while rest % q == 0:
            rest //= q
            e += 1
        a *= q ** (e // 2)
        if e % 2:
            m *= q
        q += 1 if q == 2 else 2
    m *= rest
    return m, a


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def kronecker(a: int, p: int) -> int:
    """Kronecker symbol ``(a/p)`` for a prime ``p``."""
    if p == 2:
        if a % 2 == 0:
            return 0
        return 1 if a % 8 in (1, 7) else -1
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def field_discriminant(m: int) -> int:
    return m if m % 4 == 1 else 4 * m


class Splitting(str, Enum):
    INERT = "inert"
    SPLIT = "split"
    RAMIFIED = "ramified"
    RATIONAL = "rational"

    def __str__(self):
        return self.value


def splitting_type(params, p: int | PrimeP) -> Splitting:
    """Behaviour of ``p`` in ``Q(theta_1)``; ``RATIONAL`` when ``f`` splits over Q."""
    p = as_prime(p)
    D = params.P**2 - 4 * params.Q
    if D == 0:
        raise ValueError("degenerate discriminant")
    if is_square(D):
        return Splitting.RATIONAL
    m, _ = squarefree_decomposition(D)
    chi = kronecker(field_discriminant(m), p)
    return {0: Splitting.RAMIFIED, 1: Splitting.SPLIT, -1: Splitting.INERT}[chi]


@dataclass(frozen=True)
class QuadElem:
    """Element of the quadratic etale algebra attached to ``f``.

    Field case (``split=False``): the number ``x + y*sqrt(m)``.
    Split case (``split=True``): the pair ``(x, y)`` of images under the two
    embeddings ``t -> theta_1`` and ``t -> theta_2``; ``m`` is unused.
    """

    x: Fraction
    y: Fraction
    m: int = 1
    split: bool = False

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        if not self.split:
            if self.m in (0, 1) or squarefree_decomposition(self.m)[1] != 1:
                raise ValueError(f"m={self.m} must be squarefree and not 0 or 1")

    @classmethod
    def theta1(cls, params) -> QuadElem:
        """The root ``(P + sqrt D)/2`` of ``t^2 - P t + Q`` under the fixed sign convention."""
        D = params.P**2 - 4 * params.Q
        if is_square(D):
            r = math.isqrt(D)
            return cls(Fraction(params.P + r, 2), Fraction(params.P - r, 2), split=True)
        m, a = squarefree_decomposition(D)
        return cls(Fraction(params.P, 2), Fraction(a, 2), m)

    @classmethod
    def theta2(cls, params) -> QuadElem:
        return cls.theta1(params).conj()

    @classmethod
    def sqrt_disc(cls, params) -> QuadElem:
        """``theta_1 - theta_2``."""
        return cls.theta1(params) - cls.theta2(params)

    def scalar(self, c: Scalar) -> QuadElem:
        """The rational ``c`` embedded in the same algebra as ``self``."""
        c = Fraction(c)
        if self.split:
            return QuadElem(c, c, split=True)
        return QuadElem(c, 0, self.m)

    def _check(self, other: QuadElem):
        if self.split != other.split or (not self.split and self.m != other.m):
            raise ValueError("elements of different quadratic algebras")

    def _coerce(self, other) -> QuadElem:
        if isinstance(other, QuadElem):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElem(self.x + other.x, self.y + other.y, self.m, self.split)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.x, -self.y, self.m, self.split)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.split:
            return QuadElem(self.x * other.x, self.y * other.y, split=True)
        return QuadElem(
            self.x * other.x + self.m * self.y * other.y,
            self.x * other.y + self.y * other.x,
            self.m,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadElem:
        if self.split:
            if self.x == 0 or self.y == 0:
                raise ZeroDivisionError("non-invertible quadratic element")
            return QuadElem(1 / self.x, 1 / self.y, split=True)
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("non-invertible quadratic element")
        return QuadElem(self.x / n, -self.y / n, self.m)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.scalar(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return bool(self.x) or bool(self.y)

    def conj(self) -> QuadElem:
        if self.split:
            return QuadElem(self.y, self.x, split=True)
        return QuadElem(self.x, -self.y, self.m)

    def norm(self) -> Fraction:
        if self.split:
            return self.x * self.y
        return self.x * self.x - self.m * self.y * self.y

    def trace(self) -> Fraction:
        if self.split:
            return self.x + self.y
        return 2 * self.x

    def is_rational(self) -> bool:
        return self.x == self.y if self.split else self.y == 0

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.x

    def normalized(self) -> QuadElem:
        """Representative of ``self * Q^x``: coprime integer coordinates, first nonzero positive."""
        if not self:
            raise ValueError("zero has no class modulo Q^x")
        den = math.lcm(self.x.denominator, self.y.denominator)
        xi, yi = int(self.x * den), int(self.y * den)
        g = math.gcd(xi, yi)
        xi, yi = xi // g, yi // g
        if xi < 0 or (xi == 0 and yi < 0):
            xi, yi = -xi, -yi
        return QuadElem(xi, yi, self.m, self.split)

    def __str__(self):
        if self.split:
            return f"({self.x}, {self.y})"
        return f"{self.x} + {self.y}*sqrt({self.m})"


def norm(alpha: QuadElem) -> Fraction:
    return alpha.norm()


def conj(alpha: QuadElem) -> QuadElem:
    return alpha.conj()


def _integral_basis_poly(m: int) -> tuple[int, int]:
    """``(b, c)`` with ``t^2 + b t + c`` the minimal polynomial of the integral-basis generator."""
    if m % 4 == 1:
        return -1, -(m - 1) // 4
    return 0, -m


def to_integral_basis(alpha: QuadElem) -> tuple[Fraction, Fraction]:
    """Coordinates ``(u, v)`` with ``alpha = u + v*omega`` for the ring of integers generator."""
    if alpha.m % 4 == 1:
        # sqrt(m) = 2*omega - 1
        return alpha.x - alpha.y, 2 * alpha.y
    return alpha.x, alpha.y


@dataclass(frozen=True)
class PadicCtx:
    """A root of the integral-basis polynomial of ``Q(sqrt m)`` lifted modulo ``p**precision``.

    Only meaningful when ``p`` splits.  The root fixes the prime ``P`` above ``p``
    as ``(p, omega - root)``; its residue is chosen so that ``sqrt(m) mod P``
    lies in ``[0, p/2]`` (for ``p = 2`` the residue 0 is taken).
    """

    p: int
    m: int
    precision: int
    lifted_root: int

    @classmethod
    def create(cls, m: int, p: int | PrimeP, precision: int = 8) -> PadicCtx:
        p = as_prime(p)
        b, c = _integral_basis_poly(m)
        roots = [r for r in range(p) if (r * r + b * r + c) % p == 0]
        if len(roots) != 2:
            raise ValueError(f"{p} does not split in Q(sqrt {m})")
        if p == 2:
            root = roots[0]
        else:
            to_sqrt = (lambda r: (2 * r - 1) % p) if m % 4 == 1 else (lambda r: r)
            root = min(roots, key=lambda r: to_sqrt(r) if to_sqrt(r) <= p // 2 else p)
        return cls(p, m, 1, root).raise_precision(precision)

    def raise_precision(self, precision: int) -> PadicCtx:
        """Newton-lift the root to ``p**precision``; never lowers the precision."""
        if precision <= self.precision:
            return self
        b, c = _integral_basis_poly(self.m)
        r, k = self.lifted_root, self.precision
        while k < precision:
            k = min(2 * k, precision)
            mod = self.p**k
            deriv_inv = pow(2 * r + b, -1, mod)
            r = (r - (r * r + b * r + c) * deriv_inv) % mod
        return PadicCtx(self.p, self.m, precision, r)

    def conjugate_root(self) -> int:
        b, _ = _integral_basis_poly(self.m)
        return (-b - self.lifted_root) % self.p**self.precision

    def check(self) -> bool:
        b, c = _integral_basis_poly(self.m)
        r = self.lifted_root
        return (r * r + b * r + c) % self.p**self.precision == 0


def _split_valuations(alpha: QuadElem, p: int, ctx: PadicCtx | None = None) -> tuple[int, int]:
    u, v = to_integral_basis(alpha)
    shift = min(vp_rat(c, p) for c in (u, v) if c != 0)
    scale = Fraction(p) ** (-shift)
    u, v = u * scale, v * scale
    # after scaling u, v are p-adic integers, not both divisible by p
    bound = vp_rat(alpha.norm(), p) - 2 * shift
    ctx = ctx or PadicCtx.create(alpha.m, p)
    while ctx.precision <= bound:
        ctx = ctx.raise_precision(2 * ctx.precision)
    mod = p**ctx.precision
    out = []
    for root in (ctx.lifted_root, ctx.conjugate_root()):
        val = (u.numerator * pow(u.denominator, -1, mod) + v.numerator * pow(v.denominator, -1, mod) * root) % mod
        out.append(shift + (vp_int(val, p) if val else ctx.precision))
    return out[0], out[1]


def valuations_above_p(alpha: QuadElem, p: int | PrimeP) -> tuple[int, ...]:
    """Valuations of ``alpha`` at the primes above ``p``.

    Split: ``(v_P, v_{P^sigma})``.  Inert, ramified: ``(v_P,)``.  Split algebra
    (rational field case): p-valuations of the two coordinates.
    """
    p = as_prime(p)
    if not alpha:
        raise ValueError("valuation of zero")
    if alpha.split:
        return vp_rat(alpha.x, p), vp_rat(alpha.y, p)
    chi = kronecker(field_discriminant(alpha.m), p)
    vn = vp_rat(alpha.norm(), p)
    if chi == -1:
        return (vn // 2,)
    if chi == 0:
        return (vn,)
    return _split_valuations(alpha, p)


def local_conductor_exponent(params, p: int) -> int:
    """Exponent of ``p`` in the conductor of ``Z[theta_1]`` inside the ring of integers.

    Equals ``floor(s/2)`` for odd ``p``; zero when ``f`` is reducible is not
    meaningful, so callers must pass an irreducible ``f``.
    """
    D = params.P**2 - 4 * params.Q
    m, _ = squarefree_decomposition(D)
    dF = field_discriminant(m)
    s = vp_int(D, p)
    return (s - vp_int(dF, p)) // 2
