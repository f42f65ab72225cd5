"""Independent oracles used to freeze expected values.

Everything here deliberately avoids the package's own numeric paths:
binomial tails come from exact integer arithmetic (the float success
probability is converted to an exact binary rational), rejection
probabilities from direct multinomial enumeration, and the margin p-value
from a bisection scan over significance levels.
"""

from __future__ import annotations

import math
from fractions import Fraction


def exact_binom_prefix(n: int, p: float) -> tuple[list[int], int]:
    """Integer numerators of the binomial CDF with a common denominator.

    Returns (prefix, denom) where prefix[x] / denom = P(N <= x) exactly for
    the binary rational success probability p.
    """
    frac = Fraction(p)
    a, b = frac.numerator, frac.denominator
    terms = [math.comb(n, k) * a**k * (b - a) ** (n - k) for k in range(n + 1)]
    prefix = []
    run = 0
    for t in terms:
        run += t
        prefix.append(run)
    return prefix, b**n


def exact_binom_cdf(x: int, n: int, p: float) -> Fraction:
    if x < 0:
        return Fraction(0)
    if x >= n:
        return Fraction(1)
    prefix, denom = exact_binom_prefix(n, p)
    return Fraction(prefix[x], denom)


def exact_lower_index(n: int, p: float, eps: float) -> int:
    """Largest L with P(N < L) <= eps, via exact arithmetic."""
    prefix, denom = exact_binom_prefix(n, p)
    e = Fraction(eps)
    bound = 0
    for candidate in range(1, n + 2):
        if Fraction(prefix[candidate - 1], denom) <= e:
            bound = candidate
        else:
            break
    return bound


def exact_upper_index(n: int, p: float, eps: float) -> int:
    """Smallest U with P(N < U) >= 1 - eps, capped at n."""
    prefix, denom = exact_binom_prefix(n, p)
    target = 1 - Fraction(eps)
    for u in range(0, n + 1):
        below = Fraction(prefix[u - 1], denom) if u > 0 else Fraction(0)
        if below >= target:
            return u
    return n


def trinomial_reject_prob(reject, n: int, p10: float, p01: float) -> float:
    """Direct multinomial enumeration of the rejection probability.

    Sums C(n; a, b, n-a-b) p10^a p01^b (1-p10-p01)^(n-a-b) over every
    rejected sample-space point (a, b).
    """
    rest_p = 1.0 - p10 - p01
    total = 0.0
    for a in range(n + 1):
        for b in range(n + 1 - a):
            if reject[a, b]:
                coeff = math.comb(n, a) * math.comb(n - a, b)
                total += coeff * p10**a * p01**b * rest_p ** (n - a - b)
    return total


def margin_pvalue_scan(margin_test_fn, counts, iters: int = 60) -> float:
    """Smallest rejecting alpha by bisection over the decision function."""
    lo, hi = 1e-9, 1.0 - 1e-12
    if margin_test_fn(counts, hi).decision != "reject_H0":
        return 1.0
    if margin_test_fn(counts, lo).decision == "reject_H0":
        return lo
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if margin_test_fn(counts, mid).decision == "reject_H0":
            hi = mid
        else:
            lo = mid
    return hi


def region_coverage(region, p10: float, p01: float) -> float:
    """Probability content of a two-stage confidence region, by enumeration."""
    n = region.n
    q01 = p01 / (1.0 - p10)
    total = 0.0
    for n10 in range(region.l10, region.u10 + 1):
        pm = math.comb(n, n10) * p10**n10 * (1.0 - p10) ** (n - n10)
        lo, hi = region.conditional[n10]
        m = n - n10
        inner = 0.0
        for n01 in range(max(lo, 0), min(hi, m) + 1):
            inner += math.comb(m, n01) * q01**n01 * (1.0 - q01) ** (m - n01)
        total += pm * inner
    return total


def connected_components(mask) -> list[set[tuple[int, int]]]:
    """4-connected components of a boolean grid, as sets of index pairs."""
    seen = set()
    comps = []
    rows, cols = mask.shape
    for i in range(rows):
        for j in range(cols):
            if mask[i, j] and (i, j) not in seen:
                comp = set()
                stack = [(i, j)]
                seen.add((i, j))
                while stack:
                    a, b = stack.pop()
                    comp.add((a, b))
                    for da, db in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                        x, y = a + da, b + db
                        if 0 <= x < rows and 0 <= y < cols and mask[x, y] and (x, y) not in seen:
                            seen.add((x, y))
                            stack.append((x, y))
                comps.append(comp)
    return comps
