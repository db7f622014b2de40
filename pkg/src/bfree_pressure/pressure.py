"""Closed-form topological pressure, entropy and equilibrium states.

Values are in bits/symbol. Three families of subshifts are covered:

* the full shift, where the pressure of a 2-local potential is log2 lam+;
* sandwich subshifts [w, x] with periodic bounds, where the pressure is
  sum m[a, b, l] * log2 Z(l)[a, b] over the gap statistics of (w, x);
* hereditary B-free subshifts, the special case w = 0, x = eta, where the
  gap frequencies are the Mirsky probabilities of the blocks 0 1^(l-2) 0.

For potentials depending on x_0 only, the pressure over any subordinate
subshift whose base measure has zero entropy is
nu(0) phi(0) + nu(1) log2(2**phi(0) + 2**phi(1)), attained by the image of
nu x Bernoulli(p) under coordinatewise multiplication.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import CoprimalityRequired, Requires2, SimplexViolation
from .mirsky import gap_cylinder_coprime
from .numtheory import (
    bfree_density,
    is_pairwise_coprime,
    primitive_reduce,
    reciprocal_sum,
)
from .transfer import (
    build_transfer,
    log2_partition_table,
    reduce_4local,
)
from .words import (
    CylinderPattern,
    GapStats,
    eta_word,
    gap_stats,
    sandwich_marginals,
    zero_gap_frequencies,
)

__all__ = [
    "Decomposition",
    "EquilibriumDescriptor",
    "PressureReport",
    "binary_entropy",
    "log2_sum_exp2",
    "pressure_full_shift",
    "pressure_one_hereditary",
    "pressure_one_sandwich",
    "entropy_value",
    "pressure_from_gapstats",
    "pressure_periodic_sandwich",
    "hereditary_gap_frequencies",
    "pressure_bfree_hereditary",
    "lin_chen_2inB",
    "pressure_4local_2inB",
    "equilibrium_cylinder",
    "equilibrium_identity_check",
    "TempoRecord",
    "tempo_correction",
]


def log2_sum_exp2(values):
    """log2(sum 2**v) without overflow."""
    values = np.asarray(values, dtype=float)
    top = np.max(values)
    return float(top + np.log2(np.sum(np.exp2(values - top))))


def binary_entropy(p):
    """H2(p) in bits, with H2(0) = H2(1) = 0."""
    if p <= 0 or p >= 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


@dataclass(frozen=True)
class Decomposition:
    """leading + c_term + correction == value.

    leading = log2 lam+, c_term = sum m log2 C+, correction = the remainder
    sum m log2(1 + (C-/C+) (lam-/lam+)**(l-1)).
    """

    leading: float
    c_term: float
    correction: float

    def total(self):
        return self.leading + self.c_term + self.correction

    def to_json(self):
        return {"leading": self.leading, "c_term": self.c_term, "correction": self.correction}


@dataclass(frozen=True)
class EquilibriumDescriptor:
    """The equilibrium state of a 1-local potential.

    ``kind`` is "hereditary" (base measure nu on one sequence) or "sandwich"
    (base joining rho of the pair); the Bernoulli factor puts mass ``p`` on
    the symbol 0.
    """

    p: float
    kind: str
    base: object = None

    def to_json(self):
        return {"p": self.p, "kind": self.kind}


@dataclass(frozen=True)
class PressureReport:
    value: float
    method: str
    decomposition: Decomposition | None = None
    equilibrium: EquilibriumDescriptor | None = None
    inputs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.decomposition is not None:
            gap = abs(self.decomposition.total() - self.value)
            if gap > 1e-12 * max(1.0, abs(self.value)):
                raise ArithmeticError(f"decomposition is off by {gap}")

    def __float__(self):
        return float(self.value)

    def to_json(self):
        return {
            "value": self.value,
            "units": "bits/symbol",
            "method": self.method,
            "decomposition": None if self.decomposition is None else self.decomposition.to_json(),
            "equilibrium": None if self.equilibrium is None else self.equilibrium.to_json(),
            "inputs": self.inputs,
        }


def _q(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def pressure_full_shift(phi):
    td = build_transfer(phi)
    value = float(math.log2(td.lambda_plus))
    return PressureReport(
        value,
        "full_shift",
        Decomposition(value, 0.0, 0.0),
        inputs={"phi": phi.to_json()},
    )


def _one_local_value(weights, phi):
    # weights: (mass where the symbol is forced to 0, forced to 1, free)
    r00, r11, r01 = weights
    free = log2_sum_exp2([phi.phi0, phi.phi1])
    return float(r00) * phi.phi0 + float(r11) * phi.phi1 + float(r01) * free


def pressure_one_hereditary(nu1, phi):
    """nu(0) phi(0) + nu(1) log2(2**phi(0) + 2**phi(1))."""
    nu1 = Fraction(nu1)
    if not 0 <= nu1 <= 1:
        raise ValueError("nu(1) must lie in [0, 1]")
    value = _one_local_value((1 - nu1, 0, nu1), phi)
    return PressureReport(
        value,
        "one_local_hereditary",
        equilibrium=EquilibriumDescriptor(phi.gibbs_p, "hereditary", {"nu1": _q(nu1)}),
        inputs={"nu1": _q(nu1), "phi": phi.to_json()},
    )


def pressure_one_sandwich(rho00, rho11, rho01, phi):
    """rho(0,0) phi(0) + rho(1,1) phi(1) + rho(0,1) log2(2**phi(0) + 2**phi(1))."""
    rho = tuple(Fraction(r) for r in (rho00, rho11, rho01))
    if any(r < 0 for r in rho) or sum(rho) != 1:
        raise SimplexViolation(f"rho = {tuple(map(str, rho))} is not a probability vector")
    value = _one_local_value(rho, phi)
    base = {"rho00": _q(rho[0]), "rho11": _q(rho[1]), "rho01": _q(rho[2])}
    return PressureReport(
        value,
        "one_local_sandwich",
        equilibrium=EquilibriumDescriptor(phi.gibbs_p, "sandwich", base),
        inputs={**base, "phi": phi.to_json()},
    )


def entropy_value(kind, *, nu1=None, bset=None, pair=None, rho01=None):
    """Topological entropy (bits) of a subordinate subshift with zero-entropy base.

    hereditary: nu(1), given directly or as the density of F_B.
    sandwich: rho(0, 1), given directly or read off a periodic pair.
    """
    if kind == "hereditary":
        if nu1 is not None:
            return Fraction(nu1)
        if bset is not None:
            return bfree_density(bset)
        raise ValueError("hereditary entropy needs nu1 or bset")
    if kind == "sandwich":
        if rho01 is not None:
            return Fraction(rho01)
        if pair is not None:
            return sandwich_marginals(pair)[2]
        raise ValueError("sandwich entropy needs rho01 or pair")
    raise ValueError(f"unknown kind {kind!r}")


def pressure_from_gapstats(stats, phi, method="gap_statistics", inputs=None):
    """sum m[a, b, l] log2 Z(l)[a, b], with the leading / C+ / correction split."""
    td = build_transfer(phi)
    inputs = {"phi": phi.to_json()} if inputs is None else inputs
    lead = float(math.log2(td.lambda_plus))
    if stats.full_shift or not stats.entries:
        return PressureReport(lead, method, Decomposition(lead, 0.0, 0.0), inputs=inputs)
    ell_max = max(ell for (_, _, ell) in stats.entries)
    tables = {}
    value = c_term = correction = 0.0
    norm = 0.0
    for (a, b, ell), m in sorted(stats.entries.items()):
        if (a, b) not in tables:
            tables[a, b] = log2_partition_table(td, a, b, ell_max)
        m = float(m)
        logZ = tables[a, b][ell - 1]
        logC = math.log2(td.C_plus[a, b])
        value += m * logZ
        c_term += m * logC
        # log2 Z - (l-1) log2 lam+ - log2 C+ is log2(1 + (C-/C+) r**(l-1)) without its domain issues
        correction += m * (logZ - (ell - 1) * lead - logC)
        norm += m * (ell - 1)
    # leading term is sum (l-1) m log2 lam+, i.e. log2 lam+ once the stats are normalized
    leading = norm * lead
    return PressureReport(
        float(value), method, Decomposition(float(leading), float(c_term), float(correction)), inputs=inputs
    )


def pressure_periodic_sandwich(pair, phi):
    stats = gap_stats(pair)
    inputs = {"w": str(pair.w), "x": str(pair.x), "phi": phi.to_json()}
    method = "full_shift" if stats.full_shift else "periodic_sandwich"
    return pressure_from_gapstats(stats, phi, method, inputs)


def hereditary_gap_frequencies(bset):
    """{l: nu(0 1^(l-2) 0)} for 2 <= l <= min B + 1 (exact).

    Pairwise coprime sets use the CRT product formula and never build eta;
    other sets read the runs of ones of eta over one period.
    """
    bset = primitive_reduce(bset)
    if not bset.moduli:
        return {}
    if is_pairwise_coprime(bset):
        freqs = {ell: gap_cylinder_coprime(bset, ell) for ell in range(2, bset.min + 2)}
        return {ell: m for ell, m in freqs.items() if m}
    return zero_gap_frequencies(eta_word(bset))


def pressure_bfree_hereditary(bset, phi):
    """Pressure of the hereditary closure of the B-free shift for a 2-local phi.

    sum over 2 <= l <= min B + 1 of nu(0 1^(l-2) 0) log2 Z(l)[0, 0]. The
    empty set gives the full shift.
    """
    freqs = hereditary_gap_frequencies(bset)
    stats = GapStats({(0, 0, ell): m for ell, m in freqs.items()}, full_shift=not freqs)
    inputs = {"set": str(bset), "phi": phi.to_json()}
    return pressure_from_gapstats(stats, phi, "bfree_hereditary", inputs)


def _require_2(bset):
    if 2 not in bset:
        raise Requires2(f"2 is not in {{{bset}}}")


def lin_chen_2inB(bset, a00, a01, a1):
    """a00 (1 - 2d) + d log2(2**(a1 + a01) + 2**(2 a00)) for phi = a00 1_00 + a01 1_01 + a1 1_1."""
    _require_2(bset)
    d = bfree_density(bset)
    value = a00 * float(1 - 2 * d) + float(d) * log2_sum_exp2([a1 + a01, 2 * a00])
    return PressureReport(
        value,
        "two_in_b_closed_form",
        inputs={"set": str(bset), "a00": a00, "a01": a01, "a1": a1, "d": _q(d)},
    )


def pressure_4local_2inB(bset, phi):
    """Half the hereditary pressure of B \\ {2} for the odd-coordinate potential."""
    _require_2(bset)
    rest = primitive_reduce(bset).without(2)
    inner = pressure_bfree_hereditary(rest, reduce_4local(phi))
    return PressureReport(
        inner.value / 2,
        "four_local_two_in_b",
        inputs={"set": str(bset), "phi4": phi.to_json(), "reduced_set": str(rest)},
    )


def equilibrium_cylinder(word, p, pattern):
    """mu(pattern) for mu = image of nu x Bernoulli(p) under (y, g) -> y * g.

    nu is the uniform measure on the orbit of ``word``. A position where the
    base word is 1 shows 0 with probability p and 1 with probability 1 - p;
    a base 0 always shows 0.
    """
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    if not isinstance(pattern, CylinderPattern):
        pattern = CylinderPattern(pattern)
    arr = word.array
    s = word.period
    prob = np.ones(s)
    for o, v in pattern.entries:
        base = np.roll(arr, -o)
        if v == 1:
            prob *= np.where(base == 1, 1 - p, 0.0)
        else:
            prob *= np.where(base == 1, p, 1.0)
    return float(prob.sum() / s)


def equilibrium_identity_check(bset, phi):
    """|d H2(p) + mu(0) phi(0) + mu(1) phi(1) - P| for the equilibrium mu of phi."""
    d = bfree_density(bset)
    report = pressure_one_hereditary(d, phi)
    p = report.equilibrium.p
    word = eta_word(bset)
    mu0 = equilibrium_cylinder(word, p, CylinderPattern([(0, 0)]))
    mu1 = equilibrium_cylinder(word, p, CylinderPattern([(0, 1)]))
    free_energy = float(d) * binary_entropy(p) + mu0 * phi.phi0 + mu1 * phi.phi1
    return abs(free_energy - report.value)


@dataclass(frozen=True)
class TempoRecord:
    """Size of the correction term for a pairwise coprime set."""

    S: Fraction
    d: Fraction
    T: float
    ratio: float
    epsilon: float
    report: PressureReport

    def to_json(self):
        return {
            "set": self.report.inputs.get("set"),
            "S": _q(self.S),
            "d": _q(self.d),
            "one_minus_d": float(1 - self.d),
            "T": self.T,
            "ratio": self.ratio,
            "epsilon": self.epsilon,
        }


def tempo_correction(bset, phi, epsilon=1.0):
    """Correction term T of the hereditary pressure and the ratio |T| / (1 - d)**epsilon."""
    if not is_pairwise_coprime(bset):
        raise CoprimalityRequired(f"{{{bset}}} is not pairwise coprime")
    if not 0 < epsilon < 2:
        raise ValueError("epsilon must lie in (0, 2)")
    report = pressure_bfree_hereditary(bset, phi)
    d = bfree_density(bset)
    S = reciprocal_sum(bset)
    T = report.decomposition.correction
    gap = float(1 - d)
    ratio = abs(T) / gap**epsilon if gap > 0 else 0.0
    return TempoRecord(S, d, T, ratio, epsilon, report)
