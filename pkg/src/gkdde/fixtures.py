"""Published 6-D Suarez-Schopf matrices (alpha = 0.75), printed to 4 decimals.

The reduced matrix is ``M1 + M2 / tau``; in terms of the assembled split
``A = (2/tau) P + Q`` this means ``Q = M1`` and ``2 P = M2``.
"""
import numpy as np

TOLERANCE = 5e-5
ALPHA = 0.75
N = 6

M1 = np.array([
    [-0.25, 1.25, -2.5, 5, -7.75, 11.75],
    [-0.15, 0.75, -1.5, 3, -4.65, 7.05],
    [-0.05, 0.25, -0.5, 1, -1.55, 2.35],
    [-0.0206, 0.1029, -0.2059, 0.4118, -0.6382, 0.9676],
    [-0.0102, 0.0509, -0.1018, 0.2036, -0.3156, 0.4785],
    [-0.0057, 0.0286, -0.0572, 0.1143, -0.1772, 0.2687],
])

M2 = np.array([
    [0, 2, -3, 7, -10, 16],
    [0, -1.2, 7.8, -10.2, 20.4, -26.4],
    [0, -0.4, -2.4, 11.6, -12.2, 24.2],
    [0, -0.1647, -0.9882, -3.4588, 14.7412, -13.0941],
    [0, -0.0814, -0.4887, -1.7104, -4.4796, 17.7557],
    [0, -0.0457, -0.2744, -0.9605, -2.5156, -5.4886],
])

M1.setflags(write=False)
M2.setflags(write=False)
