# Sequences w with w_{n+2} = P w_{n+1} - Q w_n, stored by their seed pair (w_1, w_0).
#
# Multiplying two sequences means multiplying the seeds in Z[t]/(f).

from fractions import Fraction

from laxton.recurrence import (
    ClassVector,
    RecurrenceParams,
    b_act,
    inv,
    lambda_norm,
    laxton_mul,
    lucas_pair,
    mul,
    power,
    prime_field,
    term,
    window,
)

fib = RecurrenceParams(1, -1)
F, L = lucas_pair(fib)  # Fibonacci (1, 0) and Lucas (1, 2)
print(F, L)

# %% terms in both directions
print(window(F, -5, 12).terms)
print(term(F, 100))
print(term(ClassVector(1, 0, RecurrenceParams(3, 2)), -4))  # Q = 2: negative indices leave Z

# %% the shift B moves the window by one
print(b_act(F, 1), b_act(F, 10), b_act(F, -3))

# %% the product of Fibonacci and Lucas
FL = mul(F, L)
print(FL, laxton_mul(F, L))  # the two formulas agree
print(window(FL, 0, 8).terms)

# %% the norm Lambda is multiplicative and picks up a factor Q under shifts
a, b = ClassVector(2, 5, fib), ClassVector(-1, 3, fib)
print(lambda_norm(a), lambda_norm(b), lambda_norm(mul(a, b)))
print(lambda_norm(b_act(a, 7)), (-1) ** 7 * lambda_norm(a))

# %% inverses and powers
print(inv(a), mul(a, inv(a)))
print(power(ClassVector(0, 1, fib), 5))  # [0,1]^n is the shift B^n applied to the identity

# %% the same law over F_p
ctx = prime_field(7)
x = ClassVector(3, 4, fib, ctx)
print(x, inv(x), mul(x, inv(x)))

# %% rational scalars
print(ClassVector(Fraction(1, 2), 3, fib).scale(4))
