# Inside G(f): the chain G(f,p) <= K(f,p) <= H(f,p), and what the quotients look like.

from laxton.classify import crosscheck_structure, membership, predict_structure, verify_exact_sequence
from laxton.finite import unit_quotient, unit_quotient_formula
from laxton.recurrence import ClassVector, RecurrenceParams

fib = RecurrenceParams(1, -1)

# %% where a given class sits
for seeds, p in [((1, 0), 7), ((1, 2), 11), ((1, 2), 5), ((3, 2), 3)]:
    r = membership(ClassVector(*seeds, fib), p)
    print(seeds, p, r.in_G, r.in_Gstar, r.in_K, r.in_H, r.reduced_point)

# %% reduction mod p is onto with kernel G(f,p)
rep = verify_exact_sequence(fib, 29)
print(rep.ok, rep.coset_count, rep.gstar_order)

# %% predicted structure, case by case
for params, p in [(fib, 3), (fib, 29), (fib, 5), (RecurrenceParams(2, -17), 3), (RecurrenceParams(1, -2), 3)]:
    pr = predict_structure(params, p)
    print(params, p, pr.case, pr.kstar_mod_gstar, pr.g_mod_k, pr.free_rank)

# %% prediction against enumeration
rep = crosscheck_structure(RecurrenceParams(1, -2), 3)
print(rep.verdict)
print(rep.computed)

# %% the unit quotient (O/p^k)^x / (Z/p^k)^x, counted and by formula
for P, Q, p in [(2, -17, 3), (1, -31, 5), (1, -181, 5)]:
    params = RecurrenceParams(P, Q)
    print((P, Q, p), unit_quotient(params, p), unit_quotient_formula(params, p))

# %% at p = 3 with high ramification either candidate can occur
for P, Q in [(1, 61), (2, -242)]:
    rep = crosscheck_structure(RecurrenceParams(P, Q), 3)
    print((P, Q), rep.verdict, rep.computed["g_mod_k"], rep.predicted.g_mod_k)
