"""Exact arithmetic on sets of multiples.

A finite modulus set B determines the set of multiples M_B = {n : b | n for
some b in B} and its complement, the B-free integers F_B. All densities are
returned as :class:`fractions.Fraction`.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .config import get_config
from .errors import DegenerateModulusSet, PeriodOverflow, SubsetBlowup

__all__ = [
    "ModulusSet",
    "format_rational",
    "parse_rational",
    "primitive_reduce",
    "truncate",
    "lcm_of",
    "multiples_density",
    "multiples_density_by_residues",
    "bfree_density",
    "density_sweep",
    "reciprocal_sum",
    "is_pairwise_coprime",
    "log_ratio_constant",
    "reciprocal_bounds",
]


@dataclass(frozen=True)
class ModulusSet:
    """A finite set of moduli, stored sorted and without repeats.

    Sets containing 1 are rejected: every integer would be a multiple and
    F_B would be empty. The empty set is allowed and means F_B is all of Z.
    """

    moduli: tuple

    def __init__(self, moduli=()):
        vals = sorted({int(b) for b in moduli})
        if vals and vals[0] == 1:
            raise DegenerateModulusSet("modulus set contains 1; F_B would be empty")
        if vals and vals[0] < 1:
            raise ValueError(f"moduli must be positive integers, got {vals[0]}")
        object.__setattr__(self, "moduli", tuple(vals))

    @classmethod
    def parse(cls, text):
        """Parse a comma separated list such as ``"2,3,25"``; blank means empty."""
        text = text.strip()
        if not text:
            return cls()
        return cls(int(tok) for tok in text.split(","))

    def __str__(self):
        return ",".join(str(b) for b in self.moduli)

    def __iter__(self):
        return iter(self.moduli)

    def __len__(self):
        return len(self.moduli)

    def __contains__(self, b):
        return b in self.moduli

    @property
    def min(self):
        return self.moduli[0] if self.moduli else None

    def without(self, b):
        return ModulusSet(m for m in self.moduli if m != b)


def format_rational(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text):
    return Fraction(text.strip())


def primitive_reduce(bset):
    """Drop every modulus divisible by a smaller member; M_B is unchanged."""
    kept = []
    for b in bset.moduli:
        if not any(b % a == 0 for a in kept):
            kept.append(b)
    return ModulusSet(kept)


def truncate(bset, K):
    """B_K = {b in B : b < K}."""
    if K < 2:
        raise ValueError("K must be at least 2")
    return ModulusSet(b for b in bset.moduli if b < K)


def _lcm(values):
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def lcm_of(bset, cap=None):
    """Least common multiple of the moduli; raises PeriodOverflow above ``cap``."""
    if not bset.moduli:
        raise ValueError("lcm of an empty modulus set is undefined")
    cap = get_config().lcm_cap if cap is None else cap
    out = 1
    for b in bset.moduli:
        out = out * b // math.gcd(out, b)
        if out > cap:
            raise PeriodOverflow(out, cap)
    return out


def multiples_density_by_residues(bset, cap=None):
    """d(M_B) by counting residues mod lcm(B) hit by some modulus."""
    if not bset.moduli:
        return Fraction(0)
    s = lcm_of(bset, cap)
    hit = bytearray(s)
    for b in bset.moduli:
        hit[::b] = b"\x01" * len(range(0, s, b))
    return Fraction(sum(hit), s)


def multiples_density(bset, subset_cap=None):
    """d(M_B) by inclusion-exclusion over nonempty subsets.

    Terms are accumulated per distinct lcm value, which gives the same sum
    as the plain subset expansion with far fewer live terms. Above the
    subset cap, residue counting is used when lcm(B) fits the lcm cap.
    """
    cfg = get_config()
    subset_cap = cfg.subset_cap if subset_cap is None else subset_cap
    if len(bset) > subset_cap:
        try:
            return multiples_density_by_residues(bset)
        except PeriodOverflow:
            raise SubsetBlowup(len(bset), subset_cap) from None
    # signed coefficient per lcm value of the subsets seen so far
    terms = {}
    for b in bset.moduli:
        new = {b: 1}
        for m, c in terms.items():
            l = m * b // math.gcd(m, b)
            new[l] = new.get(l, 0) - c
        for m, c in new.items():
            terms[m] = terms.get(m, 0) + c
    return sum((Fraction(c, m) for m, c in terms.items() if c), Fraction(0))


def bfree_density(bset):
    """d(F_B) = 1 - d(M_B); for pairwise coprime sets also checked against the product."""
    d = 1 - multiples_density(bset)
    if is_pairwise_coprime(bset):
        prod = Fraction(1)
        for b in bset.moduli:
            prod *= Fraction(b - 1, b)
        if prod != d:  # pragma: no cover - would indicate an arithmetic bug
            raise ArithmeticError(f"product formula {prod} disagrees with {d}")
    return d


def density_sweep(bset, Ks):
    """[(K, d(F_{B_K}))] for increasing K; the values are nonincreasing."""
    Ks = list(Ks)
    if any(a >= b for a, b in zip(Ks, Ks[1:])):
        raise ValueError("Ks must be strictly increasing")
    return [(K, bfree_density(truncate(bset, K))) for K in Ks]


def reciprocal_sum(bset):
    return sum((Fraction(1, b) for b in bset.moduli), Fraction(0))


def is_pairwise_coprime(bset):
    return all(math.gcd(a, b) == 1 for a, b in combinations(bset.moduli, 2))


def log_ratio_constant(d0=Fraction(1, 2)):
    """C = -ln(d0)/(1-d0), the sup of -ln(d)/(1-d) over d in [d0, 1)."""
    d0 = float(d0)
    return -math.log(d0) / (1 - d0)


def reciprocal_bounds(bset, d0=Fraction(1, 2)):
    """Check 1 - d <= S <= C(1 - d) for a pairwise coprime set with d >= d0.

    Returns ``(lower_ok, upper_ok, d, S, C)``. The left inequality is decided
    exactly; the right one in floating point with a 1e-12 relative slack.
    """
    d = bfree_density(bset)
    if d < d0:
        raise ValueError(f"d = {d} is below d0 = {d0}")
    S = reciprocal_sum(bset)
    C = log_ratio_constant(d0)
    lower_ok = 1 - d <= S
    rhs = C * float(1 - d)
    upper_ok = float(S) <= rhs * (1 + 1e-12) + 1e-300
    return lower_ok, upper_ok, d, S, C
