"""
The sequence eta and its Mirsky measure
=======================================

eta is the 0-1 indicator of the B-free integers. For finite B the Mirsky
measure is the uniform measure on the orbit of eta, so the probability of a
cylinder is just its frequency over one period.
"""

from bfree_pressure import CylinderPattern, ModulusSet, eta_word, mirsky_cylinder, mirsky_sweep
from bfree_pressure.mirsky import gap_cylinder_coprime, mirsky_cylinder_exact
from bfree_pressure.words import eta_stream

B = ModulusSet.parse("2,3")
print("eta for {2,3}:", eta_word(B))

# a window far from the origin, without building the whole period
big = ModulusSet.parse("2,3,5,7,11,13,17,19")
print("eta on [10**9, 10**9 + 40):", "".join(map(str, eta_stream(big, 10**9, 10**9 + 40))))

# cylinders: "1 at 0 and 1 at 4" only happens at i = 1 mod 6
pat = CylinderPattern.parse("0:1,4:1")
print("nu(x_0 = x_4 = 1) =", mirsky_cylinder_exact(B, pat))

# pairwise coprime moduli act independently (CRT), giving product formulas
# that never touch the period
B = ModulusSet.parse("7,11,13,17,19")
pat = CylinderPattern.parse("0:0,1:1,2:1,5:0")
print("coprime formula:", mirsky_cylinder(B, pat, method="coprime"))
print("period count:   ", mirsky_cylinder(B, pat, method="exact"))

# the gap cylinders 0 1^k 0 are what the pressure formulas consume
print("nu(0 1^5 0) =", gap_cylinder_coprime(B, 7))

# truncation sweep, with the running spread as a convergence diagnostic
sweep = mirsky_sweep(ModulusSet.parse("2,3,25,49"), CylinderPattern.parse("0:1"), [4, 10, 30, 50])
for K, value, approx, spread in sweep.rows():
    print(f"  K = {K:3d}  nu(1) = {value:>8}  ({approx:.5f})  spread so far {spread:.5f}")
