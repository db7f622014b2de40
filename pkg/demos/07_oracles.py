"""
Brute force against the closed forms
====================================

The oracle module never touches eigenvalues or gap statistics: it lists
blocks straight from the bounds and sums weights over them.
"""

import math

from bfree_pressure import ModulusSet, PeriodicWord, Potential2, sandwich_pair
from bfree_pressure.oracle import LanguageSpec, enumerate_blocks, oracle_compare
from bfree_pressure.pressure import pressure_bfree_hereditary, pressure_periodic_sandwich

B = ModulusSet.parse("2,3")
print("2-blocks of the hereditary {2}-free shift:", enumerate_blocks(LanguageSpec.hereditary(ModulusSet([2]), 2)))

# block counts grow like 2**(n d)
for n in (6, 12, 18, 24):
    c = len(enumerate_blocks(LanguageSpec.hereditary(B, n)))
    print(f"  n = {n:2d}: {c:6d} blocks, log2(c)/n = {math.log2(c) / n:.4f} (d = 1/3)")

phi = Potential2.parse("00:1,01:-0.5,11:0.25")
cmp_ = oracle_compare(pressure_bfree_hereditary(B, phi), LanguageSpec.hereditary(B), phi, [6, 12, 18])
print(cmp_.to_csv(), end="")
print("pass:", cmp_.passed)

pair = sandwich_pair(PeriodicWord.parse("010"), PeriodicWord.parse("011"))
cmp_ = oracle_compare(pressure_periodic_sandwich(pair, phi), LanguageSpec.sandwich(pair), phi,
                      [10, 100, 1000], method="dp")
print(cmp_.to_csv(), end="")
print("pass:", cmp_.passed)
