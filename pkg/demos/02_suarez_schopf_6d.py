"""
The six-dimensional Suarez-Schopf reduction
===========================================

Assemble the reduced matrix for alpha = 0.75 and N = 6 and compare the
model part Q and the transport part 2P with the published 4-decimal values.
"""
import numpy as np

from gkdde import SuarezSchopfParams, assemble_matrix, suarez_schopf_spec
from gkdde import fixtures

np.set_printoptions(precision=4, suppress=True, linewidth=120)

params = SuarezSchopfParams(alpha=0.75, tau=2.0)
print("T+ =", params.t_plus)

system = assemble_matrix(suarez_schopf_spec(params), 6)
print("Q =\n", system.Q)
print("2P =\n", 2 * system.P)
print("max |Q - M1| =", np.abs(system.Q - fixtures.M1).max())
print("max |2P - M2| =", np.abs(2 * system.P - fixtures.M2).max())

# %%
# A = M1 + M2 / tau, so changing tau only rescales the transport part.
for tau in (1.0, 2.0, 5.0):
    A = assemble_matrix(suarez_schopf_spec(SuarezSchopfParams(0.75, tau)), 6).A
    print(tau, np.abs(A - (fixtures.M1 + fixtures.M2 / tau)).max())
