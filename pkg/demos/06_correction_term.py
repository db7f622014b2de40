"""
How small is the correction term?
=================================

For pairwise coprime B the hereditary pressure splits as log lambda+ plus
C+ terms plus a correction T. Along sets whose B-free density tends to 1,
T shrinks at least as fast as 1 - d.
"""

from bfree_pressure import ModulusSet, Potential2, tempo_correction

phi = Potential2.parse("00:0.3,01:-0.7,10:0.5,11:1.1")
print(f"{'B':>14}  {'1 - d':>10}  {'S':>10}  {'T':>11}  {'|T|/(1-d)':>10}")
for p, q in [(101, 103), (401, 409), (1009, 1013), (4001, 4003), (9949, 9967)]:
    rec = tempo_correction(ModulusSet([p, q]), phi)
    print(f"{str(ModulusSet([p, q])):>14}  {float(1 - rec.d):10.3e}  {float(rec.S):10.3e}  "
          f"{rec.T:11.3e}  {rec.ratio:10.3e}")

# with a smaller exponent the ratio still shrinks, just more slowly
rec = tempo_correction(ModulusSet([9949, 9967]), phi, epsilon=0.5)
print("epsilon = 1/2:", f"{rec.ratio:.3e}")
