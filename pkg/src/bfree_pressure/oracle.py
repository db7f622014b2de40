"""Brute-force validators for the closed-form pressures.

Nothing here touches the transfer-matrix eigen-data or the gap statistics:
blocks are enumerated directly from the bounds, and pressures are computed
from Birkhoff sums over those blocks.

Blocks are handled internally as Python ints with bit j holding A_j, and
returned publicly as 0/1 strings read left to right.
"""

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .config import get_config
from .errors import EnumerationCap, NoFixedPosition
from .numtheory import lcm_of
from .transfer import potential_table, sup_norm
from .words import PeriodicWord, SandwichPair, eta_word

__all__ = [
    "LanguageSpec",
    "enumerate_blocks",
    "block_codes",
    "naive_pressure",
    "NaiveEstimate",
    "single_period_pressure",
    "dp_shift_pressure",
    "dp_error_bound",
    "oracle_compare",
    "Comparison",
    "SINGLE_PERIOD_FREE_CAP",
]

SINGLE_PERIOD_FREE_CAP = 24


@dataclass(frozen=True)
class LanguageSpec:
    """Which subshift's n-blocks to enumerate.

    kind is "full_shift", "periodic_sandwich" (with ``pair``) or
    "bfree_hereditary" (with ``bset``).
    """

    kind: str
    n: int = 1
    pair: SandwichPair | None = None
    bset: object = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("block length must be at least 1")
        if self.kind == "periodic_sandwich" and self.pair is None:
            raise ValueError("periodic_sandwich needs a pair")
        if self.kind == "bfree_hereditary" and self.bset is None:
            raise ValueError("bfree_hereditary needs a modulus set")
        if self.kind not in ("full_shift", "periodic_sandwich", "bfree_hereditary"):
            raise ValueError(f"unknown language kind {self.kind!r}")

    @classmethod
    def full_shift(cls, n=1):
        return cls("full_shift", n)

    @classmethod
    def sandwich(cls, pair, n=1):
        return cls("periodic_sandwich", n, pair=pair)

    @classmethod
    def hereditary(cls, bset, n=1):
        return cls("bfree_hereditary", n, bset=bset)

    def with_length(self, n):
        return LanguageSpec(self.kind, n, self.pair, self.bset)

    def bounds(self):
        """(w, x) periodic bounds whose shifted windows generate the language."""
        if self.kind == "full_shift":
            return PeriodicWord((0,)), PeriodicWord((1,))
        if self.kind == "periodic_sandwich":
            return self.pair.w, self.pair.x
        return PeriodicWord.zeros(1), eta_word(self.bset)

    def period(self):
        if self.kind == "bfree_hereditary":
            return lcm_of(self.bset) if self.bset.moduli else 1
        return self.bounds()[0].period if self.kind == "periodic_sandwich" else 1


def _window_masks(w, x, n):
    """For each shift i: (bits forced to 1, bits free) of the length-n window."""
    s = w.period * x.period // math.gcd(w.period, x.period)
    out = []
    seen = set()
    for i in range(s):
        ones = free = 0
        for j in range(n):
            lo, hi = w[i + j], x[i + j]
            if lo > hi:
                raise ValueError(f"w > x at position {i + j}")
            if lo == 1:
                ones |= 1 << j
            elif hi == 1:
                free |= 1 << j
        if (ones, free) not in seen:
            seen.add((ones, free))
            out.append((ones, free))
    return out


def block_codes(spec, cap=None):
    """Sorted array of the distinct n-blocks as ints (bit j = A_j)."""
    cap = get_config().enum_cap if cap is None else cap
    w, x = spec.bounds()
    masks = _window_masks(w, x, spec.n)
    total = sum(1 << bin(free).count("1") for _, free in masks)
    if total > cap:
        raise EnumerationCap(f"{total} candidate blocks exceed cap {cap}")
    codes = set()
    for ones, free in masks:
        sub = free
        while True:
            codes.add(ones | sub)
            if sub == 0:
                break
            sub = (sub - 1) & free
    return np.array(sorted(codes), dtype=np.int64)


def _code_to_str(code, n):
    return "".join("1" if (code >> j) & 1 else "0" for j in range(n))


def enumerate_blocks(spec, cap=None):
    """The distinct blocks of length spec.n, as sorted 0/1 strings."""
    return sorted(_code_to_str(int(c), spec.n) for c in block_codes(spec, cap))


def _birkhoff_weights(codes, length, k, table, n_windows):
    """phi^(n)(A) for each block code: the sum of phi over its first n windows."""
    bits = ((codes[:, None] >> np.arange(length)) & 1).astype(np.int64)
    total = np.zeros(len(codes))
    for j in range(n_windows):
        win = np.zeros(len(codes), dtype=np.int64)
        for t in range(k):
            win = (win << 1) | bits[:, j + t]
        total += table[win]
    return total


def _log2_sum_exp2(v):
    top = np.max(v)
    return float(top + np.log2(np.sum(np.exp2(v - top))))


@dataclass(frozen=True)
class NaiveEstimate:
    n: int
    estimate: float
    bound: float
    blocks: int

    def __float__(self):
        return self.estimate


def naive_pressure(spec, phi, n, cap=None):
    """(1/n) log2 sum over blocks A of length n+k-1 of 2**(phi summed over the n windows of A).

    Here k is the number of leading coordinates phi actually reads. The
    estimate never falls below the true pressure (the block sums are
    submultiplicative). ``bound`` caps the overshoot:

        (k - 1 + 2k|phi| + log2 s + r(1 + 2|phi|)) / n,  r = n mod s,

    covering the k - 1 trailing symbols that carry no window, the boundary
    windows, the union over the s shifts of the bounds, and an incomplete
    last period.
    """
    k, table = potential_table(phi)
    # trailing coordinates phi ignores need no extra symbols
    while k > 1 and np.array_equal(table[0::2], table[1::2]):
        table = table[0::2]
        k -= 1
    length = n + k - 1
    codes = block_codes(spec.with_length(length), cap)
    weights = _birkhoff_weights(codes, length, k, table, n)
    estimate = _log2_sum_exp2(weights) / n
    s = spec.period()
    norm = sup_norm(phi)
    r = n % s
    bound = (k - 1 + 2 * k * norm + math.log2(s) + r * (1 + 2 * norm)) / n
    return NaiveEstimate(n, estimate, bound, len(codes))


def single_period_pressure(pair, phi, free_cap=SINGLE_PERIOD_FREE_CAP):
    """(1/s) log2 of the weighted sum over one period, closed up by the fixed symbol at 0.

    The pair is first rotated so that a fixed position sits at index 0; the
    sum then runs over all fillings A of the free positions, each weighted by
    2**(phi over the s transitions of A followed by A_0).
    """
    if pair.is_full_shift:
        raise NoFixedPosition("the pair (0, 1) has no fixed position; use pressure_full_shift")
    rot = pair.rotated()
    s = rot.period
    free = rot.free_positions
    if len(free) > free_cap:
        raise EnumerationCap(f"{len(free)} free positions exceed cap {free_cap}")
    table = np.array(phi.phi)
    fills = np.arange(1 << len(free), dtype=np.int64)
    sym = np.empty((len(fills), s + 1), dtype=np.int64)
    fixed = np.array(rot.w.bits, dtype=np.int64)
    sym[:, :s] = fixed
    for j, pos in enumerate(free):
        sym[:, pos] = (fills >> j) & 1
    sym[:, s] = sym[:, 0]
    weights = table[sym[:, :-1], sym[:, 1:]].sum(axis=1)
    return _log2_sum_exp2(weights) / s


def _max_gap(pair):
    """Largest distance between cyclically consecutive fixed positions."""
    fixed = pair.fixed_positions
    s = pair.period
    return max((fixed[(j + 1) % len(fixed)] - f) % s or s for j, f in enumerate(fixed))


def dp_error_bound(phi, n_periods, pair):
    """|dp_shift_pressure - P| <= (2g - 1) |phi| / (n_periods * s).

    g is the largest distance between consecutive fixed positions. Any window
    of n_periods * s symbols splits at its first and last fixed positions into
    a stretch carrying exactly n_periods periods of gap weight, minus the one
    gap that straddles the window edge, plus the free head and tail; the head,
    tail and that gap each cost at most |phi| per transition. With no fixed
    position a Perron-vector argument gives 3 |phi| instead.
    """
    g = 2 if pair.is_full_shift else _max_gap(pair)
    return (2 * g - 1) * sup_norm(phi) / (n_periods * pair.period)


def dp_shift_pressure(pair, phi, n_periods, cap=None):
    """Forward DP over blocks of N = n_periods * s symbols, for every starting shift.

    For shift i the DP sums 2**(phi over the N - 1 transitions) over all
    blocks of N symbols lying between the shifted bounds; the result is
    (1/N) log2 of the largest of these sums. The per-step vector is
    renormalized and its log2 scale accumulated.
    """
    if n_periods < 1:
        raise ValueError("n_periods must be at least 1")
    cap = get_config().dp_cap if cap is None else cap
    s = pair.period
    N = n_periods * s
    if N > cap:
        raise EnumerationCap(f"DP length {N} exceeds cap {cap}")
    M = np.exp2(np.array(phi.phi))
    w = np.array(pair.w.bits)
    x = np.array(pair.x.bits)
    # allow[i, a]: symbol a admissible at position i mod s
    allow = np.zeros((s, 2), dtype=bool)
    allow[:, 0] = w == 0
    allow[:, 1] = x == 1
    shifts = np.arange(s)
    v = allow[shifts].astype(float)
    logscale = np.zeros(s)
    for t in range(1, N):
        v = (v @ M) * allow[(shifts + t) % s]
        top = v.max(axis=1)
        v /= top[:, None]
        logscale += np.log2(top)
    totals = logscale + np.log2(v.sum(axis=1))
    # shifts are scanned in index order, so the maximum is reproducible
    return float(np.max(totals)) / N


@dataclass(frozen=True)
class Comparison:
    target: float
    method: str
    rows: tuple = field(default_factory=tuple)

    @property
    def passed(self):
        return all(row["diff"] <= row["bound"] for row in self.rows)

    def to_json(self):
        return {"target": self.target, "method": self.method, "pass": self.passed, "rows": list(self.rows)}

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "estimate", "bound", "diff"])
        for row in self.rows:
            writer.writerow([row["n"], repr(row["estimate"]), repr(row["bound"]), repr(row["diff"])])
        return buf.getvalue()


def oracle_compare(target, spec, phi, schedule, method="naive", slack=1e-9):
    """Tabulate oracle estimates against a closed-form value.

    ``method`` "naive" enumerates blocks of length n (plus locality); "dp"
    runs dp_shift_pressure with n periods and needs a sandwich spec. A row
    passes when |estimate - target| <= bound + slack.
    """
    target_value = float(target)
    rows = []
    for n in schedule:
        if method == "naive":
            est = naive_pressure(spec, phi, n)
            estimate, bound = est.estimate, est.bound
        elif method == "dp":
            if spec.kind == "periodic_sandwich":
                pair = spec.pair
            elif spec.kind == "bfree_hereditary":
                w, x = spec.bounds()
                pair = SandwichPair(w.lift(x.period), x)
            else:
                pair = SandwichPair(PeriodicWord((0,)), PeriodicWord((1,)))
            estimate = dp_shift_pressure(pair, phi, n)
            bound = dp_error_bound(phi, n, pair)
        else:
            raise ValueError(f"unknown method {method!r}")
        rows.append(
            {
                "n": n,
                "estimate": estimate,
                "bound": bound + slack,
                "diff": abs(estimate - target_value),
            }
        )
    return Comparison(target_value, method, tuple(rows))
