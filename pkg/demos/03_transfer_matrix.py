"""
The transfer matrix of a 2-local potential
==========================================

A potential phi(x_0, x_1) gives the 2x2 matrix M[a, b] = 2**phi(a, b). Its
powers count weighted blocks, and its two real eigenvalues give those
counts in closed form.
"""

import numpy as np

from bfree_pressure import Potential2, build_transfer, partition_Z
from bfree_pressure.transfer import det_zero_reduce, log2_partition_Z

phi = Potential2.parse("00:1")  # phi(0,0) = 1, else 0
td = build_transfer(phi)
print("M =", td.M.tolist())
print(f"lambda+ = {td.lambda_plus:.12f}  ((3 + sqrt 5) / 2 = {(3 + 5**0.5) / 2:.12f})")
print(f"lambda- = {td.lambda_minus:.12f}")
print("C+ =", np.round(td.C_plus, 6).tolist())

# three ways to get Z(n)[a, b]: matrix power, spectral formula, brute force
for n in (2, 5, 12):
    vals = [partition_Z(phi, 0, 1, n, m) for m in ("power", "eigen", "enumerate")]
    print(f"Z({n})[0,1] = " + " / ".join(f"{v:.10g}" for v in vals))

# logs stay finite long after the counts themselves overflow
print("log2 Z(5000)[0,0] =", log2_partition_Z(td, 0, 0, 5000))

# when det M = 0 the potential secretly depends on one coordinate only
print("phi(a,b) = a + b reduces to", det_zero_reduce(Potential2([[0, 1], [1, 2]])))

# extended precision for badly conditioned matrices
near = Potential2([[0.5, 0.25], [0.25, 1e-15]])
print("det in double: ", build_transfer(near).det)
print("det at 200 bits:", build_transfer(near, prec=200).det)
