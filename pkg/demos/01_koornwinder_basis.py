"""
Koornwinder polynomials and their derivative table
==================================================

Evaluate the first few Koornwinder polynomials, check orthogonality under
the Lebesgue-plus-endpoint measure, and expand dK_n/ds back into the basis.
"""
import numpy as np

from gkdde import gauss_legendre, koornwinder_eval, koornwinder_norm_sq, solve_coeffs
from gkdde.koornwinder import koornwinder_table

np.set_printoptions(precision=4, suppress=True, linewidth=120)

# %%
# Endpoint values: K_n(1) = 1 and K_n(-1) = (-1)^n (n^2 + n + 1)
for n in range(6):
    print(n, koornwinder_eval(n, 1.0), koornwinder_eval(n, -1.0))

# %%
# Gram matrix of K_0..K_7: (1/2) int K_n K_p ds + K_n(1) K_p(1)
rule = gauss_legendre(16)
K = koornwinder_table(7, rule.nodes)
gram = 0.5 * (K * rule.weights) @ K.T + 1.0
print(gram)
print("closed-form norms:", [koornwinder_norm_sq(n) for n in range(8)])

# %%
# dK_n/ds = sum_k a[n, k] K_k. Compare against a centred finite difference at s = 0.3.
s, eps = 0.3, 1e-6
for n in range(1, 6):
    a = solve_coeffs(n)
    series = a @ koornwinder_table(n - 1, s)
    fd = (koornwinder_eval(n, s + eps) - koornwinder_eval(n, s - eps)) / (2 * eps)
    print(n, a, series, fd)
