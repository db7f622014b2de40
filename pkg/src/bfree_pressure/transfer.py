"""Potentials, the 2x2 transfer matrix and block partition functions.

All logarithms are base 2, matching the 2**phi weighting: the full shift
has entropy exactly 1 bit/symbol.

The matrix is M[a, b] = 2**phi(a, b). Z(n)[a, b] = (M**(n-1))[a, b] is the
weighted count of length-n blocks from a to b, and by the spectral
decomposition

    Z(n)[a, b] = C+[a, b] * lam+**(n-1) + C-[a, b] * lam-**(n-1),

with C+- = (M - lam-+ I) / (lam+- - lam-+).
"""

import contextlib
import json
import math
from dataclasses import dataclass, field
from itertools import product

import mpmath
import numpy as np

from .errors import MethodCap

__all__ = [
    "Potential1",
    "Potential2",
    "Potential4",
    "TransferData",
    "build_transfer",
    "partition_Z",
    "log2_partition_Z",
    "log2_partition_table",
    "det_zero_reduce",
    "reduce_4local",
    "potential_table",
    "sup_norm",
    "ENUMERATE_CAP",
]

ENUMERATE_CAP = 24


def _parse_blocks(spec, k):
    """Block-keyed values from a dict, a JSON object string or ``"00:1.5,01:0"``."""
    if isinstance(spec, str):
        text = spec.strip()
        if text.startswith("{"):
            spec = json.loads(text)
        else:
            spec = {}
            for tok in filter(None, (t.strip() for t in text.split(","))):
                key, val = tok.split(":")
                spec[key.strip()] = float(val)
    values = {}
    for key, val in spec.items():
        key = str(key)
        if len(key) != k or any(c not in "01" for c in key):
            raise ValueError(f"block key {key!r} is not a {k}-bit block")
        values[key] = float(val)
        if not math.isfinite(values[key]):
            raise ValueError(f"potential value for {key!r} is not finite")
    # unspecified blocks default to 0
    return [values.get("".join(bits), 0.0) for bits in product("01", repeat=k)]


def _format_blocks(table, k):
    return {"".join(bits): float(v) for bits, v in zip(product("01", repeat=k), table)}


@dataclass(frozen=True)
class Potential1:
    """phi(x) = phi(x_0)."""

    phi0: float
    phi1: float

    def __post_init__(self):
        if not (math.isfinite(self.phi0) and math.isfinite(self.phi1)):
            raise ValueError("potential values must be finite")

    @classmethod
    def parse(cls, spec):
        return cls(*_parse_blocks(spec, 1))

    def to_json(self):
        return {"0": self.phi0, "1": self.phi1}

    def __getitem__(self, a):
        return (self.phi0, self.phi1)[a]

    def as_potential2(self):
        """The same function read as a 2-local potential."""
        return Potential2([[self.phi0, self.phi0], [self.phi1, self.phi1]])

    @property
    def gibbs_p(self):
        """Probability of the symbol 0 under the Gibbs (Bernoulli) measure."""
        # 2**phi0 / (2**phi0 + 2**phi1), written to avoid overflow
        gap = self.phi1 - self.phi0
        if gap > 0:
            e = 2.0**-gap
            return e / (1.0 + e)
        return 1.0 / (1.0 + 2.0**gap)


@dataclass(frozen=True)
class Potential2:
    """phi(x) = phi(x_0, x_1), stored as a 2x2 nested tuple."""

    phi: tuple

    def __init__(self, phi):
        rows = tuple(tuple(float(v) for v in row) for row in phi)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("a 2-local potential is a 2x2 table")
        if not all(math.isfinite(v) for r in rows for v in r):
            raise ValueError("potential values must be finite")
        object.__setattr__(self, "phi", rows)

    @classmethod
    def parse(cls, spec):
        t = _parse_blocks(spec, 2)
        return cls([t[:2], t[2:]])

    @classmethod
    def zero(cls):
        return cls([[0, 0], [0, 0]])

    @classmethod
    def from_indicators(cls, a00=0.0, a01=0.0, a1=0.0):
        """a00 * 1_{00} + a01 * 1_{01} + a1 * 1_{1}."""
        return cls([[a00, a01], [a1, a1]])

    def to_json(self):
        return _format_blocks([v for r in self.phi for v in r], 2)

    def __getitem__(self, ab):
        a, b = ab
        return self.phi[a][b]

    def matrix(self):
        return np.exp2(np.array(self.phi))


@dataclass(frozen=True)
class Potential4:
    """phi(x) = phi(x_0, x_1, x_2, x_3), stored flat in x_0-major order."""

    values: tuple

    def __init__(self, values):
        vals = np.asarray(values, dtype=float).reshape(-1)
        if vals.size != 16:
            raise ValueError("a 4-local potential has 16 values")
        if not np.all(np.isfinite(vals)):
            raise ValueError("potential values must be finite")
        object.__setattr__(self, "values", tuple(vals.tolist()))

    @classmethod
    def parse(cls, spec):
        return cls(_parse_blocks(spec, 4))

    def to_json(self):
        return _format_blocks(self.values, 4)

    def __getitem__(self, idx):
        x0, x1, x2, x3 = idx
        return self.values[8 * x0 + 4 * x1 + 2 * x2 + x3]


def potential_table(phi):
    """(k, table) with table[code] = phi(block), code reading x_0 as the top bit."""
    if isinstance(phi, Potential1):
        return 1, np.array([phi.phi0, phi.phi1])
    if isinstance(phi, Potential2):
        return 2, np.array(phi.phi).reshape(-1)
    if isinstance(phi, Potential4):
        return 4, np.array(phi.values)
    raise TypeError(f"unsupported potential {type(phi).__name__}")


def sup_norm(phi):
    return float(np.max(np.abs(potential_table(phi)[1])))


@dataclass(frozen=True)
class TransferData:
    """Spectral snapshot of M(phi); see the module docstring for the formulas.

    In double mode the arrays are float64. When built with ``prec`` the
    scalars are mpmath numbers and the arrays have dtype object.
    """

    M: np.ndarray = field(repr=False)
    trace: object
    det: object
    lambda_plus: object
    lambda_minus: object
    C_plus: np.ndarray = field(repr=False)
    C_minus: np.ndarray = field(repr=False)
    prec: int | None = None

    @property
    def discriminant(self):
        return (self.M[0, 0] - self.M[1, 1]) ** 2 + 4 * self.M[0, 1] * self.M[1, 0]

    @property
    def ratio(self):
        """lam- / lam+, in (-1, 1)."""
        return self.lambda_minus / self.lambda_plus

    def to_json(self):
        f = float
        return {
            "M": [[f(v) for v in row] for row in self.M],
            "trace": f(self.trace),
            "det": f(self.det),
            "lambda_plus": f(self.lambda_plus),
            "lambda_minus": f(self.lambda_minus),
            "C_plus": [[f(v) for v in row] for row in self.C_plus],
            "C_minus": [[f(v) for v in row] for row in self.C_minus],
        }


def build_transfer(phi, prec=None):
    """Closed-form eigen-data of M(phi).

    lam- is obtained as det/lam+ rather than (tr - sqrt(disc))/2; the two are
    equal, and the former does not cancel when det is tiny.
    """
    if prec is None:
        M = phi.matrix()
        sqrt = math.sqrt
        eye = np.eye(2)
    else:
        with mpmath.workprec(prec):
            M = np.array([[mpmath.power(2, mpmath.mpf(v)) for v in row] for row in phi.phi], dtype=object)
        sqrt = mpmath.sqrt
        eye = np.array([[mpmath.mpf(1), mpmath.mpf(0)], [mpmath.mpf(0), mpmath.mpf(1)]], dtype=object)
    ctx = mpmath.workprec(prec) if prec is not None else contextlib.nullcontext()
    with ctx:
        tr = M[0, 0] + M[1, 1]
        det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        # (M00 - M11)^2 + 4 M01 M10 = tr^2 - 4 det, strictly positive
        root = sqrt((M[0, 0] - M[1, 1]) ** 2 + 4 * M[0, 1] * M[1, 0])
        lp = (tr + root) / 2
        lm = det / lp
        Cp = (M - lm * eye) / (lp - lm)
        Cm = (M - lp * eye) / (lm - lp)
    return TransferData(M, tr, det, lp, lm, Cp, Cm, prec)


def _check_symbols(a, b, n):
    if a not in (0, 1) or b not in (0, 1):
        raise ValueError("symbols must be 0 or 1")
    if n < 1:
        raise ValueError("n must be at least 1")


def _mat_power(M, e):
    # exponentiation by squaring; works for float and object (mpmath) arrays
    result = np.array([[M[0, 0] * 0 + 1, M[0, 0] * 0], [M[0, 0] * 0, M[0, 0] * 0 + 1]], dtype=M.dtype)
    base = M
    while e:
        if e & 1:
            result = result.dot(base)
        base = base.dot(base)
        e >>= 1
    return result


def _enumerate_Z(phi, a, b, n):
    if n == 1:
        return 1.0 if a == b else 0.0
    logw = np.zeros(1 << (n - 2))
    codes = np.arange(1 << (n - 2))
    prev = np.full(codes.shape, a)
    table = np.array(phi.phi)
    for j in range(n - 2):
        cur = (codes >> j) & 1
        logw += table[prev, cur]
        prev = cur
    logw += table[prev, np.full(codes.shape, b)]
    return float(np.sum(np.exp2(logw)))


def partition_Z(phi, a, b, n, method="power", prec=None):
    """Z(n)[a, b] by matrix power, by the spectral formula, or by brute force.

    ``phi`` may be a Potential2 or a TransferData already built from one
    (enumeration needs the potential itself).
    """
    _check_symbols(a, b, n)
    if method == "enumerate":
        if isinstance(phi, TransferData):
            raise TypeError("enumeration needs the potential, not its transfer data")
        if n > ENUMERATE_CAP:
            raise MethodCap(f"enumeration capped at n = {ENUMERATE_CAP}, got {n}")
        return _enumerate_Z(phi, a, b, n)
    td = phi if isinstance(phi, TransferData) else build_transfer(phi, prec)
    ctx = mpmath.workprec(td.prec) if td.prec is not None else contextlib.nullcontext()
    with ctx:
        if method == "power":
            return _mat_power(td.M, n - 1)[a, b]
        if method == "eigen":
            # 0**0 == 1 in both float and mpmath, so n = 1 gives the identity
            return td.C_plus[a, b] * td.lambda_plus ** (n - 1) + td.C_minus[a, b] * td.lambda_minus ** (n - 1)
    raise ValueError(f"unknown method {method!r}")


def log2_partition_Z(td, a, b, n):
    """log2 Z(n)[a, b] without overflow, via powers of M / lam+."""
    _check_symbols(a, b, n)
    N = _mat_power(np.asarray(td.M, dtype=float) / float(td.lambda_plus), n - 1)
    return (n - 1) * math.log2(float(td.lambda_plus)) + math.log2(N[a, b])


def log2_partition_table(td, a, b, n_max):
    """[log2 Z(n)[a, b] for n = 1 .. n_max] via running products of M / lam+.

    Entry n = 1 is -inf off the diagonal (Z = 0 there).
    """
    lp = float(td.lambda_plus)
    step = np.asarray(td.M, dtype=float) / lp
    out = np.empty(n_max)
    N = np.eye(2)
    log_lp = math.log2(lp)
    with np.errstate(divide="ignore"):
        for n in range(1, n_max + 1):
            out[n - 1] = (n - 1) * log_lp + np.log2(N[a, b])
            N = N @ step
    return out


def det_zero_reduce(phi, tol=1e-12):
    """psi(i) = phi(i, i) when phi00 + phi11 == phi01 + phi10 (det M = 0), else None."""
    p = phi.phi
    if abs(p[0][0] + p[1][1] - p[0][1] - p[1][0]) <= tol:
        return Potential1(p[0][0], p[1][1])
    return None


def reduce_4local(phi):
    """psi(x0, x1) = phi(0, x0, 0, x1) + phi(x0, 0, x1, 0).

    This is the 2-local potential seen by the odd coordinates when every even
    coordinate is 0, summed over two steps.
    """
    return Potential2(
        [[phi[0, x0, 0, x1] + phi[x0, 0, x1, 0] for x1 in (0, 1)] for x0 in (0, 1)]
    )
