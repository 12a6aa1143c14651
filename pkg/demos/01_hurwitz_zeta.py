"""
The Hurwitz zeta function on the real line
==========================================

Every spectral zeta function below is assembled from Hurwitz zeta values,
so this is where accuracy starts.
"""

import math

from zetadet.specfun import digamma, hurwitz_zeta, hurwitz_zeta_ds, hurwitz_zeta_laurent_at_1, log_gamma

# %%
# At non-positive integers the value is a Bernoulli polynomial, returned exactly.
for a in (0.25, 1.0, 3.5):
    print(f"zeta_H(0, {a}) = {hurwitz_zeta(0, a):+.15f}   1/2 - a = {0.5 - a:+.15f}")
print("zeta_H(-1, 1) =", hurwitz_zeta(-1, 1))

# %%
# Lerch's formula ties the s-derivative at 0 to log Gamma.
for a in (0.25, 0.5, 1, 2.5, 7):
    lhs = hurwitz_zeta_ds(0, a)
    rhs = log_gamma(a) - 0.5 * math.log(2 * math.pi)
    print(f"a={a:<5} d/ds zeta_H(0,a) = {lhs:+.15f}   difference {lhs - rhs:+.1e}")

# %%
# Near s = 1 there is a simple pole with residue 1; the constant term is -psi(a).
pole, constant = hurwitz_zeta_laurent_at_1(0.3)
print("Laurent data at s=1:", pole, constant, "  -psi(0.3) =", -digamma(0.3))

# %%
# Deep in the continued region the value still satisfies the shift recurrence.
s, a = -7.3, 0.4
print("recurrence defect:", hurwitz_zeta(s, a) - hurwitz_zeta(s, a + 1) - a**-s)
