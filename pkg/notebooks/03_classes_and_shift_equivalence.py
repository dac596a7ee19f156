# Sequences up to a rational multiple form G(f); up to a shift as well, G*(f).

from fractions import Fraction

from laxton.equivalence import decide_equiv, decide_star_equiv, lambda_ratio_obstructed, normalize, star_normalize
from laxton.recurrence import ClassVector, RecurrenceParams, b_act

fib = RecurrenceParams(1, -1)
a = ClassVector(6, 4, fib)
print(normalize(a))  # coprime integer representative (3, 2)
print(decide_equiv(a, ClassVector(-3, -2, fib)))

# %% a shifted and rescaled copy of a sequence
b = b_act(a, 9).scale(Fraction(-7, 5))
print(decide_equiv(a, b))  # not the same class in G
d = decide_star_equiv(b, a)
print(d)  # but the same in G*, with the shift recovered
print(star_normalize(a) == star_normalize(b))

# %% when Lambda(a)/Lambda(b) is not Q^n times a square, no shift can help
c = ClassVector(1, 2, fib)  # Lambda = -5
print(lambda_ratio_obstructed(a, c), decide_star_equiv(a, c).equivalent)

# %% with |theta_1| = |theta_2| the shift has finite order on classes
t = RecurrenceParams(1, 1)  # roots are sixth roots of unity
x = ClassVector(2, 1, t)
print([normalize(b_act(x, n)).pair for n in range(7)])
print(decide_star_equiv(b_act(x, 4), x))
