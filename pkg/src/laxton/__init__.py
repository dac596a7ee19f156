"""The group of second-order linear recurrences under the seed product, its reductions modulo primes, and their structure.

Submodules::

    arith        exact rationals, primes, valuations, quadratic number fields
    recurrence   seed vectors, terms, the group law
    equivalence  classes modulo scaling and modulo shifts
    finite       groups over F_p, rank of apparition, unit quotients
    classify     G(f,p) <= K(f,p) <= H(f,p), structure prediction and cross-checks
    cli          command-line entry point
"""

from .arith import PrimeP, QuadElem, Splitting, is_prime, primes_below, splitting_type, valuations_above_p
from .classify import (
    crosscheck_structure,
    membership,
    predict_structure,
    reduce_p,
    verify_exact_sequence,
)
from .equivalence import GClass, GStarClass, decide_equiv, decide_star_equiv, normalize, psi_map, star_normalize
from .finite import FiniteGroupTable, RankResult, abelian_invariants, enumerate_G, enumerate_Gstar, rank, unit_quotient
from .recurrence import (
    ClassVector,
    RecurrenceParams,
    RingCtx,
    b_act,
    inv,
    lambda_norm,
    laxton_mul,
    localized,
    mul,
    power,
    prime_field,
    term,
    window,
)

__version__ = "0.1.0"
