"""Closed-form discrepancy bounds for the torus walk and the bookkeeping
around them: the universal k^(-n/2) lower bound, the k^(-n/2d) upper
bound for badly approximable generators, the truncation index M it
relies on, the Gaussian-weighted frequency sum the M choice controls,
and a power-law fit for empirical decay rates.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .diophantine import nearest_integer_distance
from .errors import CapExceededError, InfeasibleError, ValidationError
from .fourier import FREQ_BOX_CAP, frequency_box, weight_R
from .generators import GeneratorMatrix


def theorem1_lower_bound(n: int, d: int, k: int) -> float:
    """Universal lower bound k^(-n/2) / (pi^d 5^(n+1) d^(n/2))."""
    if n < 1 or d < 1 or k < 1:
        raise ValidationError("need n >= 1, d >= 1, k >= 1")
    return k ** (-n / 2) / (math.pi ** d * 5.0 ** (n + 1) * d ** (n / 2))


def theorem2_upper_bound(n: int, d: int, c_a: float, k: int) -> float:
    """Upper bound (3/2)^d * 20 * (n / (c_a sqrt(2)))^(n/d) * k^(-n/(2d)).

    Valid when c_a is an approximation constant certifying the generator
    matrix badly approximable; c_a <= 0 means no such certificate.
    """
    if c_a <= 0.0:
        raise ValidationError("approximation constant must be positive")
    if n < 1 or d < 1 or k < 1:
        raise ValidationError("need n >= 1, d >= 1, k >= 1")
    return (1.5 ** d) * 20.0 * (n / (c_a * math.sqrt(2.0))) ** (n / d) * k ** (-n / (2 * d))


def choose_M(n: int, d: int, c_a: float, k: int) -> int:
    """Truncation index M = floor((1/8) (2 k c_a^2 / n^2)^(n/2d)).

    Raises InfeasibleError when the value is below 1: k is too small for
    the upper-bound pipeline at this approximation constant.
    """
    if c_a <= 0.0:
        raise ValidationError("approximation constant must be positive")
    if n < 1 or d < 1 or k < 1:
        raise ValidationError("need n >= 1, d >= 1, k >= 1")
    raw = (2.0 * k * c_a ** 2 / n ** 2) ** (n / (2 * d)) / 8.0
    M = int(math.floor(raw))
    if M < 1:
        raise InfeasibleError(
            f"truncation index {raw:.6g} < 1: k={k} too small for c_a={c_a} (n={n}, d={d})"
        )
    return M


def cohort_sum_S(
    G: GeneratorMatrix, k: int, M: int, box_cap: int = FREQ_BOX_CAP
) -> tuple[float, bool]:
    """Gaussian-weighted frequency sum
    S = sum over 0 < ||h||_inf <= M of exp(-(4k/n) {2Ah}^2) / R(h)
    with {.} the Euclidean nearest-integer distance, and the check
    S <= 0.5/(M+1) that the truncation analysis requires.

    This is the actual sum, not a chained over-estimate of it.
    """
    if M < 1:
        raise ValidationError("M must be >= 1")
    if k < 0:
        raise ValidationError("k must be >= 0")
    if (2 * M + 1) ** G.d > box_cap:
        raise CapExceededError(
            f"frequency box has {(2 * M + 1) ** G.d} vectors (cap {box_cap})"
        )
    A = G.as_array()
    terms = []
    for h in frequency_box(G.d, M):
        x = 2.0 * A.dot(np.asarray(h, dtype=float))
        _, euc = nearest_integer_distance(x)
        terms.append(math.exp(-(4.0 * k / G.n) * euc * euc) / weight_R(h))
    s = math.fsum(terms)
    return s, s <= 0.5 / (M + 1)


def fit_decay_exponent(series) -> float:
    """Least-squares slope of log D against log k for a (k, D) series."""
    pts = [(float(k), float(dv)) for k, dv in series]
    if len(pts) < 3:
        raise ValidationError("need at least 3 points to fit a decay exponent")
    ks = [k for k, _ in pts]
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValidationError("k values must be strictly increasing")
    if any(k <= 0 or dv <= 0 for k, dv in pts):
        raise ValidationError("k and D values must be positive")
    logk = np.log([k for k, _ in pts])
    logd = np.log([dv for _, dv in pts])
    slope, _ = np.polyfit(logk, logd, 1)
    return float(slope)


@dataclass(frozen=True)
class BoundReport:
    """Evaluated bounds for one (matrix, k) pair, serializable to JSON."""

    n: int
    d: int
    k: int
    lower: float
    upper: float | None = None
    c_a: float | None = None
    c_a_certified_up_to: int | None = None
    M: int | None = None
    s_value: float | None = None
    lemma_ok: bool | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "lower": self.lower,
            "upper": self.upper,
            "c_a": self.c_a,
            "c_a_certified_up_to": self.c_a_certified_up_to,
            "M": self.M,
            "s_value": self.s_value,
            "lemma_ok": self.lemma_ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def bound_report(
    G: GeneratorMatrix,
    k: int,
    c_a: float | None = None,
    c_a_certified_up_to: int | None = None,
) -> BoundReport:
    """Evaluate every applicable bound for G at step count k."""
    n, d = G.n, G.d
    lower = theorem1_lower_bound(n, d, k)
    if c_a is None:
        return BoundReport(n=n, d=d, k=k, lower=lower)
    M = choose_M(n, d, c_a, k)
    s_value, lemma_ok = cohort_sum_S(G, k, M)
    return BoundReport(
        n=n,
        d=d,
        k=k,
        lower=lower,
        upper=theorem2_upper_bound(n, d, c_a, k),
        c_a=c_a,
        c_a_certified_up_to=c_a_certified_up_to,
        M=M,
        s_value=s_value,
        lemma_ok=lemma_ok,
    )
