"""
The history field u_N(t, theta)
===============================

The reduced state y(t) encodes the whole history segment
u_N(t, theta) = sum_j y_j(t) K_j^tau(theta). Its right edge theta = 0 is the
scalar solution x_N(t); its left edge theta = -tau is the delayed value.
"""
import numpy as np

from gkdde import (
    SuarezSchopfParams,
    assemble_matrix,
    integrate_reduced,
    project_history,
    suarez_schopf_spec,
    to_original_variable,
)

params = SuarezSchopfParams(alpha=0.75, tau=2.0)
spec = suarez_schopf_spec(params)
N = 8
traj = integrate_reduced(assemble_matrix(spec, N), project_history(0.1, N, spec.tau), t_end=30.0, h=0.01)

theta = np.linspace(-spec.tau, 0.0, 41)
u = traj.field(theta)
print("field shape (times, theta):", u.shape)
print("right edge equals x_N:", np.array_equal(u[:, -1], traj.x))

# %%
# Transport: the field at (t, theta) is close to the solution at t + theta.
k = 2000  # t = 20
shift = int(round(spec.tau / traj.step))
print("u(t, -tau) =", u[k, 0], " x_N(t - tau) =", traj.x[k - shift])

# %%
# In the original temperature variable T = x + T+
T = to_original_variable(traj.x, params)
print("T range over the run:", T.min(), T.max())

# %%
# Long-format CSV for plotting elsewhere:
#   gkdde field --tau 2 --N 8 --h 0.01 --t-end 30 --history-constant 0.1 --theta-points 41 --out field.csv
