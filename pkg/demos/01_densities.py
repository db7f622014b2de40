"""
Densities of B-free integers
============================

A finite set B of moduli sieves out its multiples. What survives, the
B-free integers, is periodic with period lcm(B), so its density is an
exact rational.
"""

from fractions import Fraction

from bfree_pressure import ModulusSet, bfree_density, density_sweep, primitive_reduce, reciprocal_sum
from bfree_pressure.numtheory import multiples_density_by_residues, reciprocal_bounds

# the density comes from inclusion-exclusion over lcms of subsets
for text in ["2,3", "2,3,5", "4,6,9"]:
    B = ModulusSet.parse(text)
    print(f"B = {{{B}}}: d(F_B) = {bfree_density(B)}")

# counting residues mod lcm(B) gives the same numbers the slow way
B = ModulusSet.parse("4,6,9")
print("by residues:", 1 - multiples_density_by_residues(B))

# a modulus that is a multiple of another changes nothing
print("{2,3,4,9} reduces to", primitive_reduce(ModulusSet.parse("2,3,4,9")))

# infinite sets are studied through their truncations B_K = {b in B : b < K}
B = ModulusSet.parse("2,3,25")
for K, d in density_sweep(B, [3, 4, 10, 26, 30]):
    print(f"  K = {K:3d}  d = {d}")

# for pairwise coprime B with d >= 1/2 the reciprocal sum S is pinned
# between 1 - d and a constant multiple of it
B = ModulusSet.parse("101,103,107")
lower_ok, upper_ok, d, S, C = reciprocal_bounds(B)
print(f"1 - d = {float(1 - d):.6f} <= S = {float(S):.6f} <= {C:.4f} (1 - d) = {C * float(1 - d):.6f}")
assert lower_ok and upper_ok and S == reciprocal_sum(B) and d < Fraction(1)
