# Exact arithmetic underneath everything: rationals, valuations, quadratic fields.
#
# Run with `python notebooks/01_exact_arithmetic.py`.

from fractions import Fraction

from laxton.arith import QuadElem, is_prime, kronecker, primes_below, splitting_type, valuations_above_p, vp_rat
from laxton.recurrence import RecurrenceParams

# %% primes and valuations
print(primes_below(30))
print(is_prime(97), is_prime(91))
print(vp_rat(Fraction(50, 27), 5), vp_rat(Fraction(50, 27), 3))  # 2 and -3

# %% the characteristic polynomial t^2 - P t + Q and its discriminant
fib = RecurrenceParams(1, -1)
print(fib, "D =", fib.D)
print(fib.squarefree())  # D = m * c^2 with m squarefree

# how p behaves in Q(sqrt D) decides nearly everything downstream
for p in (2, 3, 5, 11, 29):
    print(p, splitting_type(fib, p), kronecker(fib.D, p))

# %% exact elements of Q(theta)
th = QuadElem.theta1(fib)  # the golden ratio, as an exact object
print(th, th.conj(), th * th.conj())  # product of the roots is Q = -1
print(th * th - th - th.scalar(1))  # theta^2 - theta - 1 = 0

# %% valuations at the primes above p
alpha = th.scalar(3) - th * Fraction(2)  # 3 - 2 theta, of norm -1
print(valuations_above_p(alpha, 11))
beta = th.scalar(4) - th  # norm 11
print(valuations_above_p(beta, 11))  # one prime above 11 divides it, the other does not
