"""
Spectral zeta functions and determinants of operator words
===========================================================

An operator word is a product of factors ``(k + a)^m`` over a shared index
``k``, each index carrying a polynomial multiplicity ``d(k)``.
"""

import math

from zetadet import CIRCLE, FLAT, SPHERE, OperatorWord, log_det, spectral_zeta, zeta_at_zero
from zetadet.engine import ContinuationParams
from zetadet.spectra import power, product

A = OperatorWord.of((0.5, 1))
B = OperatorWord.of((1, 1), (2, 1))

# %%
# In the convergent region zeta is an ordinary sum; (k + 1/2)^2 gives zeta_H(3, 1/2) at s = 1.5.
res = spectral_zeta(OperatorWord.of((0.5, 2)), FLAT, 1.5)
print(f"zeta(1.5) = {res.value:.15f}  (K={res.params.K}, error <= {res.error_estimate:.1e})")

# %%
# At s = 0 the continuation is assembled in closed form.
for name, base in (("flat", FLAT), ("circle", CIRCLE), ("sphere", SPHERE)):
    z = zeta_at_zero(B, base)
    print(f"{name:<7} zeta(0) = {z.value:+.12f}   zeta'(0) = {z.ds_value:+.12f}")

# %%
# (k + 1) on the flat base: the determinant is sqrt(2 pi).
print("det(k+1) =", math.exp(log_det(OperatorWord.of((1, 1)), FLAT)), " sqrt(2 pi) =", math.sqrt(2 * math.pi))

# %%
# Powers scale log det; a shared shift makes log det additive.
w = OperatorWord.of((0.5, 1), (2, 1.5))
print("power rule defect:", log_det(power(w, 3), SPHERE) - 3 * log_det(w, SPHERE))
u, v = OperatorWord.of((1.5, 1)), OperatorWord.of((1.5, 2.5))
print("shared-shift defect:", log_det(product([u, v]), SPHERE) - log_det(u, SPHERE) - log_det(v, SPHERE))

# %%
# Results do not depend on the cutoff.
coarse = zeta_at_zero(B, SPHERE, ContinuationParams(K=16, target_error=1.0))
fine = zeta_at_zero(B, SPHERE, ContinuationParams(K=128, J=28, target_error=1.0))
print("K=16 vs K=128:", coarse.ds_value - fine.ds_value)
