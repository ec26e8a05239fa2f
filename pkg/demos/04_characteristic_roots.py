"""
Eigenvalues of the reduced matrix and characteristic roots
==========================================================

For the linear delay equation x' = a x + b x(t - tau) the exponential
solutions exp(lam t) solve lam = a + b exp(-lam tau). The rightmost
eigenvalues of A_N approach these roots as N grows.
"""
import numpy as np

from gkdde import DDESpec, assemble_matrix

a, b, tau = 0.25, -0.75, 2.0


def newton(lam, iters=50):
    for _ in range(iters):
        g = lam - a - b * np.exp(-lam * tau)
        lam -= g / (1 + b * tau * np.exp(-lam * tau))
    return lam


for N in (4, 6, 8, 12, 16):
    eig = np.linalg.eigvals(assemble_matrix(DDESpec(a, b, 0.0, tau), N).A)
    lead = eig[np.argmax(eig.real)]
    root = newton(lead)
    print(f"N={N:2d}  rightmost eigenvalue {lead:.8f}  |eig - root| = {abs(lead - root):.2e}")
