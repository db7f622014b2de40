"""
Pressure of the hereditary B-free shift
=======================================

The hereditary closure of the B-free shift allows any sequence below a
shift of eta. Its pressure for a 2-local potential only needs the
frequencies of the gaps 0 1^k 0 in eta.
"""

from bfree_pressure import (
    ModulusSet,
    Potential1,
    Potential2,
    Potential4,
    bfree_density,
    equilibrium_identity_check,
    lin_chen_2inB,
    pressure_4local_2inB,
    pressure_bfree_hereditary,
    pressure_one_hereditary,
)
from bfree_pressure.oracle import LanguageSpec, naive_pressure

B = ModulusSet.parse("2,3,5")
zero = Potential2.zero()
print("entropy of {2,3,5}:", pressure_bfree_hereditary(B, zero).value, "=", float(bfree_density(B)))

# with 2 in B there is a closed form for phi = a00 1_00 + a01 1_01 + a1 1_1
a00, a01, a1 = 0.7, -0.4, 1.2
print("closed form:", lin_chen_2inB(B, a00, a01, a1).value)
print("general:    ", pressure_bfree_hereditary(B, Potential2.from_indicators(a00, a01, a1)).value)

# 1-local potentials: the equilibrium state multiplies eta by Bernoulli noise,
# and entropy + energy adds up to the pressure
phi1 = Potential1(0.0, 1.0)
rep = pressure_one_hereditary(bfree_density(B), phi1)
print(f"P = {rep.value:.6f}, Bernoulli p = {rep.equilibrium.p:.6f}, "
      f"identity residual {equilibrium_identity_check(B, phi1):.1e}")

# 4-local potentials with 2 in B: even positions are always 0, so the odd
# coordinates carry a 2-local potential for B without 2
phi4 = Potential4([0.1 * ((7 * c) % 5) - 0.2 for c in range(16)])
closed = pressure_4local_2inB(ModulusSet.parse("2,3"), phi4).value
est = naive_pressure(LanguageSpec.hereditary(ModulusSet.parse("2,3")), phi4, 20)
print(f"4-local: closed {closed:.6f}, block sum at n = 20 {est.estimate:.6f} (bound {est.bound:.3f})")

# adding moduli shrinks the shift, so the pressure can only drop
phi = Potential2.parse("00:0.3,01:-0.7,10:0.5,11:1.1")
for text in ["2", "2,3", "2,3,5", "2,3,5,7", "2,3,5,7,11"]:
    print(f"  B = {{{text}}}: P = {pressure_bfree_hereditary(ModulusSet.parse(text), phi).value:.6f}")
