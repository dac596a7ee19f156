# The reduction of G(f) modulo p: a cyclic group of order p+1, p-1 or p.

from laxton.arith import kronecker
from laxton.finite import enumerate_G, enumerate_Gstar, rank
from laxton.recurrence import RecurrenceParams

fib = RecurrenceParams(1, -1)

# %% the projective points with nonzero norm
g = enumerate_G(fib, 11)
print(g.order, g.elements)
print(g.invariant_factors, g.element_order((0, 1)))

# %% orders track the Legendre symbol of D
for p in (3, 5, 7, 11, 13, 29):
    print(p, kronecker(fib.D, p), enumerate_G(fib, p).order)

# %% rank of apparition = order of [0,1]
for p in (2, 3, 5, 7, 29, 47):
    res = rank(fib, p)
    print(p, res.r, res.generator_order, res.witness)

# %% the quotient by <[0,1]>
for p in (11, 29, 89):
    star = enumerate_Gstar(fib, p)
    print(p, star.order, star.invariant_factors)

# %% a multiplication table, small enough to read
t = enumerate_G(RecurrenceParams(1, -2), 3)
for row in t.multiplication_table():
    print(row)
