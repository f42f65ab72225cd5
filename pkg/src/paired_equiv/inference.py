"""The two equivalence-test procedures for paired binary data.

Both tests use only the discordant counts.  The McNemar statistic compares
their squared difference to a chi-square(1) quantile.  The margin test pools
the discordant counts into an estimate of the common discordant probability,
derives per-tail binomial bounds (L, U) at the per-stage coverage
sqrt(1 - alpha), and rejects when min(x10, x01) < L or max(x10, x01) > U.

The module also provides the two-stage confidence region for the discordant
pair and the unit-disturbance diagnostic used to judge data sitting on a
rejection boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import DomainError
from .numerics import (
    BinomialSpec,
    binom_cdf,
    binom_sf_inclusive,
    chi2_quantile_1,
    chi2_sf_1,
    lower_bound_index,
    upper_bound_index,
)

ACCEPT = "accept_H0"
REJECT = "reject_H0"
INCREASE_SAMPLE = "increase_sample"

MCNEMAR = "mcnemar"
MARGIN = "margin"


def _check_alpha(alpha: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha={alpha!r} outside (0, 1)")


@dataclass(frozen=True)
class PairedCounts:
    """Observed paired table: total n, discordant counts, optional concordants."""

    n: int
    x10: int
    x01: int
    x00: Optional[int] = None
    x11: Optional[int] = None

    def __post_init__(self) -> None:
        counts = [("n", self.n), ("x10", self.x10), ("x01", self.x01)]
        counts += [(k, v) for k, v in (("x00", self.x00), ("x11", self.x11)) if v is not None]
        for name, v in counts:
            if v < 0:
                raise DomainError(f"{name}={v!r} must be nonnegative")
        if self.x00 is not None and self.x11 is not None:
            total = self.x00 + self.x01 + self.x10 + self.x11
            if total != self.n:
                raise DomainError(f"cell counts sum to {total}, expected n={self.n}")
        elif self.x10 + self.x01 > self.n:
            raise DomainError(
                f"discordant counts {self.x10}+{self.x01} exceed n={self.n}"
            )


@dataclass(frozen=True)
class TestResult:
    """Outcome of one test at one significance level."""

    method: str
    alpha: float
    statistic: Optional[float]
    p_value: float
    decision: str
    bounds: Optional[tuple[int, int]]
    p_hat: float


@dataclass(frozen=True)
class ConfidenceRegion:
    """Two-stage region for the discordant pair at coverage >= 1 - alpha.

    ``conditional`` maps each admissible first count n10 to the bounds
    (L01, U01) of the second count given n10.
    """

    n: int
    omega: float
    l10: int
    u10: int
    conditional: Mapping[int, tuple[int, int]]


@dataclass(frozen=True)
class VariantOutcome:
    """One disturbance variant with both test results (absent if infeasible)."""

    label: str
    counts: Optional[PairedCounts]
    mcnemar: Optional[TestResult]
    margin: Optional[TestResult]


@dataclass(frozen=True)
class DisturbanceReport:
    variants: tuple[VariantOutcome, ...]
    recommendation: str


def mcnemar_test(c: PairedCounts, alpha: float) -> TestResult:
    """Classic McNemar test on the discordant counts.

    With zero discordance the statistic is taken as 0 and the hypothesis is
    accepted; zero discordance is maximal evidence for equivalence.
    """
    _check_alpha(alpha)
    s = c.x10 + c.x01
    statistic = 0.0 if s == 0 else (c.x10 - c.x01) ** 2 / s
    p_value = chi2_sf_1(statistic)
    reject = statistic > chi2_quantile_1(1.0 - alpha)
    return TestResult(
        method=MCNEMAR,
        alpha=alpha,
        statistic=statistic,
        p_value=p_value,
        decision=REJECT if reject else ACCEPT,
        bounds=None,
        p_hat=s / (2.0 * c.n) if c.n else 0.0,
    )


def margin_bounds(n: int, x10: int, x01: int, alpha: float) -> tuple[float, int, int]:
    """Pooled estimate and the per-tail bounds (p_hat, L, U) of the margin test.

    Each tail is allotted eps = (1 - sqrt(1 - alpha)) / 2 so that the two
    stages of the underlying confidence region jointly cover 1 - alpha.
    Zero discordance collapses the bounds to L = U = 0, the natural limit of
    a point-mass estimate.
    """
    _check_alpha(alpha)
    if x10 + x01 > n:
        raise DomainError(f"discordant counts {x10}+{x01} exceed n={n}")
    s = x10 + x01
    if s == 0:
        return 0.0, 0, 0
    p_hat = s / (2.0 * n)
    eps = (1.0 - math.sqrt(1.0 - alpha)) / 2.0
    spec = BinomialSpec(n, p_hat)
    return p_hat, lower_bound_index(spec, eps), upper_bound_index(spec, eps)


def margin_test(c: PairedCounts, alpha: float) -> TestResult:
    """Margin test: reject when either discordant count escapes [L, U]."""
    p_hat, lower, upper = margin_bounds(c.n, c.x10, c.x01, alpha)
    reject = min(c.x10, c.x01) < lower or max(c.x10, c.x01) > upper
    return TestResult(
        method=MARGIN,
        alpha=alpha,
        statistic=None,
        p_value=margin_pvalue(c),
        decision=REJECT if reject else ACCEPT,
        bounds=(lower, upper),
        p_hat=p_hat,
    )


def margin_pvalue(c: PairedCounts) -> float:
    """Smallest significance level at which the margin test rejects.

    Rejection through the lower bound first occurs when the per-tail
    allotment eps reaches P(N <= min); through the upper bound when it
    reaches P(N >= max - 1), since the upper bound must drop strictly below
    max before max can exceed it.  Inverting eps = (1 - sqrt(1 - alpha)) / 2
    at the smaller of the two thresholds gives the p-value; a threshold of
    1/2 or more means that branch can never reject below alpha = 1.
    """
    s = c.x10 + c.x01
    if s == 0:
        return 1.0
    spec = BinomialSpec(c.n, s / (2.0 * c.n))
    eps_low = binom_cdf(spec, min(c.x10, c.x01))
    eps_high = binom_sf_inclusive(spec, max(c.x10, c.x01) - 1)
    eps_star = min(eps_low, eps_high)
    if eps_star >= 0.5:
        return 1.0
    return 1.0 - (1.0 - 2.0 * eps_star) ** 2


def confidence_region(n: int, p10: float, p01: float, alpha: float) -> ConfidenceRegion:
    """Two-stage confidence region for the discordant pair.

    Stage one bounds the first count from its marginal binomial; stage two
    bounds the second count from the conditional binomial B(n - n10, q01)
    with q01 = p01 / (1 - p10).  Each stage covers at least
    omega = sqrt(1 - alpha), so the region covers at least 1 - alpha.
    """
    _check_alpha(alpha)
    if not (0.0 < p10 < 1.0) or not (0.0 < p01 < 1.0) or p10 + p01 >= 1.0:
        raise DomainError(
            f"discordant probabilities ({p10!r}, {p01!r}) infeasible"
        )
    omega = math.sqrt(1.0 - alpha)
    eps = (1.0 - omega) / 2.0
    first = BinomialSpec(n, p10)
    l10 = lower_bound_index(first, eps)
    u10 = upper_bound_index(first, eps)
    q01 = p01 / (1.0 - p10)
    conditional = {}
    for n10 in range(l10, u10 + 1):
        second = BinomialSpec(n - n10, q01)
        conditional[n10] = (
            lower_bound_index(second, eps),
            upper_bound_index(second, eps),
        )
    return ConfidenceRegion(n=n, omega=omega, l10=l10, u10=u10, conditional=conditional)


def _run_pair(counts: PairedCounts, alpha: float) -> tuple[TestResult, TestResult]:
    return mcnemar_test(counts, alpha), margin_test(counts, alpha)


def disturb(c: PairedCounts, alpha: float) -> DisturbanceReport:
    """Unit-disturbance diagnostic for data near a rejection boundary.

    Three one-unit changes in favor of equivalence are applied to the
    ordered discordant counts (hi, lo): add one observation to the smaller
    count, remove one from the larger, or move one from the larger to the
    smaller.  Both tests run on all four data sets.

    The recommendation reads the combined table as follows: if every method
    that rejected the original data is flipped to acceptance by some
    variant, the data sits on that method's boundary and equivalence is
    accepted.  If instead the McNemar test rejects all four data sets and
    both methods reject the original, rejection is robust.  Anything in
    between calls for more data.
    """
    _check_alpha(alpha)
    if c.x10 == c.x01:
        raise DomainError(
            f"discordant counts are tied ({c.x10}); disturbance needs x10 != x01"
        )
    swapped = c.x01 > c.x10
    hi, lo = (c.x01, c.x10) if swapped else (c.x10, c.x01)

    def oriented(n: int, new_hi: int, new_lo: int) -> PairedCounts:
        x10, x01 = (new_lo, new_hi) if swapped else (new_hi, new_lo)
        return PairedCounts(n=n, x10=x10, x01=x01, x00=c.x00, x11=c.x11)

    schemes = [
        ("original", (c.n, hi, lo)),
        ("add_one", (c.n + 1, hi, lo + 1)),
        ("reduce_one", (c.n - 1, hi - 1, lo)),
        ("adjust_one", (c.n, hi - 1, lo + 1)),
    ]
    variants = []
    for label, (n, new_hi, new_lo) in schemes:
        if new_hi < 0 or new_lo < 0 or n < new_hi + new_lo:
            variants.append(VariantOutcome(label, None, None, None))
            continue
        counts = oriented(n, new_hi, new_lo)
        mc, mg = _run_pair(counts, alpha)
        variants.append(VariantOutcome(label, counts, mc, mg))

    original = variants[0]
    others = [v for v in variants[1:] if v.counts is not None]

    def decision(v: VariantOutcome, method: str) -> str:
        result = v.mcnemar if method == MCNEMAR else v.margin
        assert result is not None
        return result.decision

    rejecting = [m for m in (MCNEMAR, MARGIN) if decision(original, m) == REJECT]
    flipped = {
        m: any(decision(v, m) == ACCEPT for v in others) for m in (MCNEMAR, MARGIN)
    }
    if all(flipped[m] for m in rejecting):
        recommendation = ACCEPT
    elif (
        len(rejecting) == 2
        and all(decision(v, MCNEMAR) == REJECT for v in [original] + others)
    ):
        recommendation = REJECT
    else:
        recommendation = INCREASE_SAMPLE
    return DisturbanceReport(variants=tuple(variants), recommendation=recommendation)
