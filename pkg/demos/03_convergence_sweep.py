"""
Reduced model versus the delay equation
=======================================

Integrate the perturbed Suarez-Schopf model (alpha = 0.75, tau = 2) from the
constant history x = 0.1, once with the method-of-steps reference solver and
once per Galerkin dimension N, and report the sup and RMS errors of x_N(t).
"""
from gkdde import HistorySegment, SuarezSchopfParams, convergence_sweep, suarez_schopf_spec

spec = suarez_schopf_spec(SuarezSchopfParams(alpha=0.75, tau=2.0))
reports = convergence_sweep(spec, HistorySegment.constant(0.1), [2, 4, 6, 8, 10, 12], t_end=40.0, h=0.005)

print(" N   sup error   rms error")
for N, report in reports.items():
    print(f"{N:2d}   {report.sup:.3e}   {report.rms:.3e}")

# %%
# The same sweep from the command line:
#   gkdde simulate --tau 2 --h 0.005 --t-end 40 --history-constant 0.1 --sweep 4,6,8,10 --out sweep/
