"""
Exact identities as equalities of quadratic forms
=================================================

Writing ``l_i = Log A_i``, each pairwise anomaly is a rational multiple of a
square of a linear form in the ``l_i``.  Identities among anomalies then
become exact matrix identities over the rationals.
"""

import random
from fractions import Fraction

from zetadet.symbolic import (
    delta2_form,
    delta_n_form_recursive,
    false_pass_bound,
    generators,
    random_orders,
    run_suite,
    verify_corollary_exact,
    verify_pairing_independence,
    verify_theorem_exact,
)

# %%
# Two generators of order 1: the form is (l_1 - l_2)^2 / 4.
a1, a2 = generators([1, 1])
print(delta2_form(a1, a2).matrix)

# %%
# delta_3 by merging, for orders (1, 2, 1/3).
g = generators([1, 2, Fraction(1, 3)])
for row in delta_n_form_recursive(g).matrix:
    print([str(x) for x in row])

# %%
# The pairwise reduction holds exactly; so does every subset version and every merge order.
rng = random.Random(0)
orders = random_orders(rng, 5)
print("orders:", [str(o) for o in orders])
print("theorem:", verify_theorem_exact(5, orders).passed)
print("k=3 subsets:", verify_corollary_exact(5, 3, orders).passed)
print("all 180 merge orders agree:", verify_pairing_independence(orders).passed)

# %%
# Random points certify an identity in the orders; this bounds the chance of a false pass.
summary = run_suite(6, 100, seed=7)
print("n=6, 100 trials:", summary["pass"], " false-pass bound", f"{summary['false_pass_bound']:.1e}")
print("per-trial bound at n=6:", false_pass_bound(6, 1))
