"""Periodic 0-1 words, sandwich pairs and their gap statistics."""

import math
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction

import numpy as np

from .config import get_config
from .errors import OrderViolation, PatternTooWide
from .numtheory import lcm_of

__all__ = [
    "PeriodicWord",
    "CylinderPattern",
    "SandwichPair",
    "GapStats",
    "eta_word",
    "eta_stream",
    "sandwich_pair",
    "gap_stats",
    "cylinder_frequency",
    "minimal_period",
    "zero_gap_frequencies",
    "sandwich_marginals",
]


@dataclass(frozen=True)
class PeriodicWord:
    """The bi-infinite word x_i = bits[i mod period]."""

    bits: tuple

    def __init__(self, bits):
        if isinstance(bits, str):
            bits = [int(c) for c in bits]
        bits = tuple(int(b) for b in bits)
        if not bits:
            raise ValueError("a periodic word needs at least one symbol")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("symbols must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def parse(cls, text):
        return cls(text.strip())

    @classmethod
    def zeros(cls, period=1):
        return cls((0,) * period)

    @classmethod
    def ones(cls, period=1):
        return cls((1,) * period)

    @property
    def period(self):
        return len(self.bits)

    def __str__(self):
        return "".join(map(str, self.bits))

    def __getitem__(self, i):
        return self.bits[i % len(self.bits)]

    def lift(self, period):
        if period % self.period:
            raise ValueError(f"{period} is not a multiple of {self.period}")
        return PeriodicWord(self.bits * (period // self.period))

    @cached_property
    def array(self):
        arr = np.array(self.bits, dtype=np.uint8)
        arr.flags.writeable = False
        return arr


@dataclass(frozen=True)
class CylinderPattern:
    """Finitely many (offset, symbol) constraints, sorted by offset."""

    entries: tuple

    def __init__(self, entries, width_cap=None):
        if isinstance(entries, dict):
            entries = entries.items()
        items = sorted((int(o), int(s)) for o, s in entries)
        if not items:
            raise ValueError("a cylinder pattern needs at least one entry")
        offsets = [o for o, _ in items]
        if len(set(offsets)) != len(offsets):
            raise ValueError("repeated offset in pattern")
        if any(s not in (0, 1) for _, s in items):
            raise ValueError("symbols must be 0 or 1")
        cap = get_config().width_cap if width_cap is None else width_cap
        width = offsets[-1] - offsets[0] + 1
        if width > cap:
            raise PatternTooWide(f"pattern width {width} exceeds cap {cap}")
        object.__setattr__(self, "entries", tuple(items))

    @classmethod
    def parse(cls, text):
        """Parse ``"0:1,4:1"`` style offset:symbol lists."""
        pairs = []
        for tok in text.split(","):
            off, sym = tok.split(":")
            pairs.append((int(off), int(sym)))
        return cls(pairs)

    @classmethod
    def block(cls, word, start=0):
        """Pattern fixing ``word`` (a 0/1 string) at offsets start, start+1, ..."""
        return cls((start + j, int(c)) for j, c in enumerate(word))

    def __str__(self):
        return ",".join(f"{o}:{s}" for o, s in self.entries)

    @property
    def offsets(self):
        return tuple(o for o, _ in self.entries)

    @property
    def width(self):
        return self.entries[-1][0] - self.entries[0][0] + 1

    @property
    def ones(self):
        return tuple(o for o, s in self.entries if s == 1)

    @property
    def zeros(self):
        return tuple(o for o, s in self.entries if s == 0)


@dataclass(frozen=True)
class SandwichPair:
    """Periodic bounds w <= x on a common period.

    ``fixed_positions`` lists every i in [0, period) with w_i == x_i and
    ``fixed_symbols`` the shared symbols there. ``rotation`` is the first
    fixed position: gap statistics are read cyclically starting from it.
    """

    w: PeriodicWord
    x: PeriodicWord
    fixed_positions: tuple = field(init=False)
    fixed_symbols: tuple = field(init=False)

    def __post_init__(self):
        if self.w.period != self.x.period:
            raise ValueError("w and x must share a period; use sandwich_pair()")
        for i, (a, b) in enumerate(zip(self.w.bits, self.x.bits)):
            if a > b:
                raise OrderViolation(i)
        fixed = tuple(i for i, (a, b) in enumerate(zip(self.w.bits, self.x.bits)) if a == b)
        object.__setattr__(self, "fixed_positions", fixed)
        object.__setattr__(self, "fixed_symbols", tuple(self.w.bits[i] for i in fixed))

    @property
    def period(self):
        return self.w.period

    @property
    def rotation(self):
        return self.fixed_positions[0] if self.fixed_positions else None

    @property
    def is_full_shift(self):
        return not self.fixed_positions

    @property
    def free_positions(self):
        return tuple(i for i, (a, b) in enumerate(zip(self.w.bits, self.x.bits)) if a != b)

    def rotated(self):
        """The same pair shifted so that a fixed position sits at index 0."""
        r = self.rotation or 0
        return SandwichPair(
            PeriodicWord(self.w.bits[r:] + self.w.bits[:r]),
            PeriodicWord(self.x.bits[r:] + self.x.bits[:r]),
        )


@dataclass(frozen=True)
class GapStats:
    """Frequencies m[a, b, l] of consecutive fixed positions at distance l-1.

    An empty map with ``full_shift`` set stands for the pair (0, 1).
    """

    entries: dict
    full_shift: bool = False

    def __post_init__(self):
        if self.full_shift and self.entries:
            raise ValueError("full-shift gap stats carry no entries")
        for (a, b, ell), m in self.entries.items():
            if a not in (0, 1) or b not in (0, 1) or ell < 2:
                raise ValueError(f"bad gap key {(a, b, ell)}")
            if m < 0:
                raise ValueError("gap frequencies must be nonnegative")

    def normalization(self):
        """sum (l-1) m; equals 1 for any gap stats of a periodic pair."""
        return sum(((ell - 1) * m for (_, _, ell), m in self.entries.items()), Fraction(0))

    def get(self, a, b, ell):
        return self.entries.get((a, b, ell), Fraction(0))

    def to_json(self):
        return {
            "full_shift": self.full_shift,
            "entries": [
                {"a": a, "b": b, "l": ell, "m": f"{m.numerator}/{m.denominator}"}
                for (a, b, ell), m in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_json(cls, obj):
        entries = {(int(e["a"]), int(e["b"]), int(e["l"])): Fraction(e["m"]) for e in obj["entries"]}
        return cls(entries, bool(obj.get("full_shift", False)))


def eta_stream(bset, lo, hi):
    """eta on positions [lo, hi) by sieving each modulus separately."""
    if hi < lo:
        raise ValueError("need lo <= hi")
    out = np.ones(hi - lo, dtype=np.uint8)
    for b in bset.moduli:
        out[(-lo) % b :: b] = 0
    return out


def eta_word(bset):
    """The indicator of F_B as a word of period lcm(B)."""
    if not bset.moduli:
        return PeriodicWord((1,))
    s = lcm_of(bset)
    return PeriodicWord(eta_stream(bset, 0, s).tolist())


def sandwich_pair(w, x):
    """Lift w and x to their common period and validate w <= x."""
    s = w.period * x.period // math.gcd(w.period, x.period)
    return SandwichPair(w.lift(s), x.lift(s))


def gap_stats(pair):
    s = pair.period
    fixed = pair.fixed_positions
    if not fixed:
        return GapStats({}, full_shift=True)
    symbols = pair.fixed_symbols
    k = len(fixed)
    counts = {}
    for j in range(k):
        nxt = fixed[j + 1] if j + 1 < k else fixed[0] + s
        key = (symbols[j], symbols[(j + 1) % k], nxt - fixed[j] + 1)
        counts[key] = counts.get(key, 0) + 1
    return GapStats({key: Fraction(c, s) for key, c in counts.items()})


def cylinder_frequency(word, pattern):
    """Fraction of shifts i in [0, s) with word[i + offset] == symbol for every entry."""
    arr = word.array
    ok = np.ones(word.period, dtype=bool)
    for o, v in pattern.entries:
        ok &= np.roll(arr, -o) == v
    return Fraction(int(ok.sum()), word.period)


def minimal_period(word):
    s = word.period
    bits = word.bits
    for t in range(1, s + 1):
        if s % t == 0 and all(bits[i] == bits[i % t] for i in range(s)):
            return t
    return s  # pragma: no cover


def zero_gap_frequencies(word):
    """{l: frequency of 0 1^(l-2) 0} read off the runs of ones in one period.

    Gives the same numbers as cylinder_frequency on each such block, in one
    pass over the word. Empty when the word has no zero.
    """
    zeros = [i for i, b in enumerate(word.bits) if b == 0]
    if not zeros:
        return {}
    s = word.period
    counts = {}
    for j, z in enumerate(zeros):
        nxt = zeros[j + 1] if j + 1 < len(zeros) else zeros[0] + s
        ell = nxt - z + 1
        counts[ell] = counts.get(ell, 0) + 1
    return {ell: Fraction(c, s) for ell, c in sorted(counts.items())}


def sandwich_marginals(pair):
    """(rho00, rho11, rho01): frequencies of the column types (w_i, x_i)."""
    s = pair.period
    c00 = c11 = c01 = 0
    for a, b in zip(pair.w.bits, pair.x.bits):
        if a == b == 0:
            c00 += 1
        elif a == b == 1:
            c11 += 1
        else:
            c01 += 1
    return Fraction(c00, s), Fraction(c11, s), Fraction(c01, s)
