"""Cylinder probabilities under the Mirsky measure of eta.

For finite B the Mirsky measure is the uniform measure on the periodic
orbit of eta, so cylinders are evaluated exactly by counting over one
period. When B is pairwise coprime the Chinese remainder theorem makes the
residues mod different moduli independent, which gives product formulas
that never materialize the period.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .config import get_config
from .errors import CoprimalityRequired, SubsetBlowup
from .numtheory import is_pairwise_coprime, truncate
from .words import cylinder_frequency, eta_word

__all__ = [
    "Sweep",
    "mirsky_cylinder_exact",
    "mirsky_ones_coprime",
    "mirsky_pattern_coprime",
    "mirsky_cylinder",
    "gap_cylinder_coprime",
    "mirsky_sweep",
]


def mirsky_cylinder_exact(bset, pattern):
    return cylinder_frequency(eta_word(bset), pattern)


def _require_coprime(bset):
    if not is_pairwise_coprime(bset):
        raise CoprimalityRequired(f"{{{bset}}} is not pairwise coprime")


def mirsky_ones_coprime(bset, T):
    """nu(x_t = 1 for t in T) = prod_b (b - #(T mod b)) / b."""
    _require_coprime(bset)
    T = set(T)
    out = Fraction(1)
    for b in bset.moduli:
        hit = len(T) if len(T) < 2 else len({t % b for t in T})
        out *= Fraction(b - hit, b)
        if not out:
            break
    return out


def mirsky_pattern_coprime(bset, pattern, subset_cap=None):
    """General cylinder by inclusion-exclusion over the zero constraints."""
    _require_coprime(bset)
    cap = get_config().subset_cap if subset_cap is None else subset_cap
    ones = set(pattern.ones)
    zeros = pattern.zeros
    if len(zeros) > cap:
        raise SubsetBlowup(len(zeros), cap)
    total = Fraction(0)
    for r in range(len(zeros) + 1):
        sign = -1 if r % 2 else 1
        for extra in combinations(zeros, r):
            total += sign * mirsky_ones_coprime(bset, ones.union(extra))
    return total


def _interval_ones(bset, length):
    # nu(1^length) for pairwise coprime B: an interval of length L covers min(L, b) residues
    out = Fraction(1)
    for b in bset.moduli:
        out *= Fraction(b - min(length, b), b)
    return out


def gap_cylinder_coprime(bset, ell):
    """nu(0 1^(ell-2) 0) for pairwise coprime B, in O(|B|) per call."""
    _require_coprime(bset)
    if ell < 2:
        raise ValueError("ell must be at least 2")
    k = ell - 2
    return (
        _interval_ones(bset, k)
        - 2 * _interval_ones(bset, k + 1)
        + _interval_ones(bset, k + 2)
    )


def mirsky_cylinder(bset, pattern, method="auto"):
    """Dispatch between exact period counting and the coprime formula."""
    if method == "exact":
        return mirsky_cylinder_exact(bset, pattern)
    if method == "coprime":
        return mirsky_pattern_coprime(bset, pattern)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if is_pairwise_coprime(bset) and len(pattern.zeros) <= get_config().subset_cap:
        return mirsky_pattern_coprime(bset, pattern)
    return mirsky_cylinder_exact(bset, pattern)


@dataclass(frozen=True)
class Sweep:
    """Per-K exact values of a truncation sweep.

    ``spread`` (max - min over the points) is a convergence diagnostic only;
    no limit is certified.
    """

    points: tuple

    @property
    def values(self):
        return [v for _, v in self.points]

    @property
    def spread(self):
        vals = self.values
        return max(vals) - min(vals) if vals else Fraction(0)

    def running_spread(self):
        out, lo, hi = [], None, None
        for _, v in self.points:
            lo = v if lo is None else min(lo, v)
            hi = v if hi is None else max(hi, v)
            out.append(hi - lo)
        return out

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def rows(self):
        """(K, "p/q", float, running spread) tuples for CSV output."""
        return [
            (K, f"{v.numerator}/{v.denominator}", float(v), float(sp))
            for (K, v), sp in zip(self.points, self.running_spread())
        ]


def mirsky_sweep(bset, pattern, Ks, method="auto"):
    Ks = list(Ks)
    if any(a >= b for a, b in zip(Ks, Ks[1:])):
        raise ValueError("Ks must be strictly increasing")
    return Sweep(tuple((K, mirsky_cylinder(truncate(bset, K), pattern, method)) for K in Ks))
