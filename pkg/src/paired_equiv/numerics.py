"""Numerically stable binomial and chi-square(1) primitives.

Binomial probabilities are computed in log space with log-gamma based
coefficients so that trial counts in the thousands neither overflow nor lose
the tails.  The chi-square pieces only need one degree of freedom, which
reduces the survival function to a complementary error function.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_lf_lock = threading.Lock()
_lf_table = np.array([0.0])  # log(k!) for k = 0..len-1


def log_factorials(n: int) -> np.ndarray:
    """Read-only table of log(k!) for k = 0..n, grown on demand."""
    global _lf_table
    if n + 1 > len(_lf_table):
        with _lf_lock:
            if n + 1 > len(_lf_table):
                table = np.array([math.lgamma(k + 1.0) for k in range(n + 1)])
                table.setflags(write=False)
                _lf_table = table
    return _lf_table[: n + 1]


@dataclass(frozen=True)
class BinomialSpec:
    """Trial count and success probability of a binomial law."""

    n: int
    p: float

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DomainError(f"n={self.n!r} must be nonnegative")
        if not (0.0 <= self.p <= 1.0):
            raise DomainError(f"p={self.p!r} outside [0, 1]")


def binom_pmf(b: BinomialSpec, k: int) -> float:
    """P(N = k) via exp(log C(n,k) + k log p + (n-k) log(1-p))."""
    if not (0 <= k <= b.n):
        raise DomainError(f"k={k!r} outside 0..{b.n}")
    if b.p == 0.0:
        return 1.0 if k == 0 else 0.0
    if b.p == 1.0:
        return 1.0 if k == b.n else 0.0
    lf = log_factorials(b.n)
    log_coeff = lf[b.n] - lf[k] - lf[b.n - k]
    return math.exp(log_coeff + k * math.log(b.p) + (b.n - k) * math.log1p(-b.p))


def binom_cdf(b: BinomialSpec, x: int) -> float:
    """P(N <= x), clamped to 0 below the support and 1 above it.

    The sum runs over whichever tail carries less mass, starting at the far
    end where terms are smallest, so small contributions are not absorbed
    into an already large accumulator.
    """
    if x < 0:
        return 0.0
    if x >= b.n:
        return 1.0
    if x < b.n * b.p:
        total = 0.0
        for k in range(0, x + 1):
            total += binom_pmf(b, k)
        return min(total, 1.0)
    upper = 0.0
    for k in range(b.n, x, -1):
        upper += binom_pmf(b, k)
    return min(max(1.0 - upper, 0.0), 1.0)


def binom_sf_inclusive(b: BinomialSpec, x: int) -> float:
    """P(N >= x); summed directly over the upper tail when that tail is the
    smaller one, complemented otherwise."""
    if x <= 0:
        return 1.0
    if x > b.n:
        return 0.0
    if x > b.n * b.p:
        total = 0.0
        for k in range(b.n, x - 1, -1):
            total += binom_pmf(b, k)
        return min(total, 1.0)
    return min(max(1.0 - binom_cdf(b, x - 1), 0.0), 1.0)


def lower_bound_index(b: BinomialSpec, eps: float) -> int:
    """Largest integer L >= 0 with P(N < L) <= eps."""
    if not (0.0 <= eps < 1.0):
        raise DomainError(f"eps={eps!r} outside [0, 1)")
    cum = 0.0
    bound = 0
    for k in range(0, b.n + 1):
        cum += binom_pmf(b, k)
        if cum <= eps:
            bound = k + 1
        else:
            break
    return bound


def upper_bound_index(b: BinomialSpec, eps: float) -> int:
    """Smallest integer U with P(N < U) >= 1 - eps, capped at n.

    The search uses the equivalent condition P(N >= U) <= eps and
    accumulates the upper tail from its far end, so the comparison happens
    between small, accurately summed quantities instead of values crowding
    1.  The cap is harmless for testing purposes: observed counts never
    exceed n, so a bound at n can never be exceeded.
    """
    if not (0.0 <= eps < 1.0):
        raise DomainError(f"eps={eps!r} outside [0, 1)")
    tail = 0.0
    bound = b.n + 1
    for u in range(b.n, -1, -1):
        tail += binom_pmf(b, u)
        if tail <= eps:
            bound = u
        else:
            break
    return min(bound, b.n)


def chi2_sf_1(x: float) -> float:
    """Survival function of chi-square with one degree of freedom."""
    if x < 0.0:
        raise DomainError(f"x={x!r} must be nonnegative")
    return math.erfc(math.sqrt(0.5 * x))


def chi2_quantile_1(q: float) -> float:
    """Value x with chi2_sf_1(x) = 1 - q, by bisection.

    The initial bracket uses the exponential tail bound
    sf(x) <= exp(-x/2), so hi = -2 log(1 - q) + 1 always over-covers.
    """
    if not (0.0 <= q < 1.0):
        raise DomainError(f"q={q!r} outside [0, 1)")
    if q == 0.0:
        return 0.0
    target = 1.0 - q
    lo = 0.0
    hi = -2.0 * math.log1p(-q) + 1.0
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if chi2_sf_1(mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
