"""Exact operating characteristics of the two tests.

A decision map fixes (n, alpha, method) and records, for every point of the
discordant sample space, whether the test rejects.  Exact size and power then
follow from the joint law of the discordant pair, factorized as the marginal
binomial of the first count times the conditional binomial of the second:

    P(N10 = a, N01 = b) = Bin(a; n, p10) * Bin(b; n - a, p01 / (1 - p10)).

The rejection probability is computed as one minus the mass of the accepted
cells.  Acceptance cells are far fewer than rejected ones for the tests at
hand (their count grows like n^1.5 rather than n^2), so the sum is cheap
enough to sweep dense parameter grids even at n = 1600.

A seeded Monte Carlo estimator provides an independent cross-check of the
exact values.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import DomainError
from .inference import MARGIN, MCNEMAR
from .model import AltParams, NullParams, null_discordant_prob, pi_bounds
from .numerics import chi2_quantile_1, log_factorials

_METHODS = (MCNEMAR, MARGIN)


@dataclass(frozen=True)
class DecisionMap:
    """Per-point decisions of one test over the sample space.

    ``reject[a, b]`` is the decision at (x10 = a, x01 = b); entries outside
    the sample space (a + b > n) are False and masked by ``in_omega``.
    For the margin test the per-sum bound arrays are kept for introspection.
    """

    n: int
    alpha: float
    method: str
    reject: np.ndarray
    in_omega: np.ndarray
    l_by_s: Optional[np.ndarray] = field(default=None, repr=False)
    u_by_s: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        for arr in (self.reject, self.in_omega, self.l_by_s, self.u_by_s):
            if arr is not None:
                arr.setflags(write=False)

    @cached_property
    def accept(self) -> np.ndarray:
        acc = self.in_omega & ~self.reject
        acc.setflags(write=False)
        return acc

    @cached_property
    def _kernel(self) -> dict:
        """Flat acceptance-cell arrays with precomputed log coefficients."""
        rows, cols = np.nonzero(self.accept)
        lf = log_factorials(self.n)
        m = self.n - rows
        rest = m - cols
        coeff = (lf[self.n] - lf[rows] - lf[m]) + (lf[m] - lf[cols] - lf[rest])
        return {
            "coeff": coeff,
            "rows": rows.astype(float),
            "m": m.astype(float),
            "cols": cols.astype(float),
            "rest": rest.astype(float),
            "any_rejected": bool(self.reject.any()),
        }


def _margin_bounds_by_s(n: int, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Margin-test bounds L(s), U(s) for every discordant sum s = 0..n.

    The bounds depend on the observed counts only through their sum (the
    pooled estimate is s / 2n), so one pair per s covers the whole map.
    """
    eps = (1.0 - math.sqrt(1.0 - alpha)) / 2.0
    lf = log_factorials(n)
    k = np.arange(n + 1)
    log_coeff = lf[n] - lf[k] - lf[n - k]
    lower = np.zeros(n + 1, dtype=np.int64)
    upper = np.zeros(n + 1, dtype=np.int64)
    for s in range(1, n + 1):
        p_hat = s / (2.0 * n)
        pmf = np.exp(log_coeff + k * math.log(p_hat) + (n - k) * math.log1p(-p_hat))
        cdf = np.cumsum(pmf)
        lower[s] = int(np.sum(cdf <= eps))
        # Upper search through the tail P(N >= u) <= eps, far end first.
        tail = np.cumsum(pmf[::-1])[::-1]
        satisfied = int(np.sum(tail <= eps))
        upper[s] = min(n + 1 - satisfied, n)
    return lower, upper


def decision_map(n: int, alpha: float, method: str) -> DecisionMap:
    """Build the full decision table of one method at level alpha."""
    if n < 1:
        raise DomainError(f"n={n!r} must be at least 1")
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha={alpha!r} outside (0, 1)")
    if method not in _METHODS:
        raise DomainError(f"method={method!r} not one of {_METHODS}")
    idx = np.arange(n + 1)
    total = idx[:, None] + idx[None, :]
    in_omega = total <= n
    if method == MCNEMAR:
        threshold = chi2_quantile_1(1.0 - alpha)
        diff_sq = (idx[:, None] - idx[None, :]).astype(float) ** 2
        statistic = np.divide(
            diff_sq,
            total,
            out=np.zeros_like(diff_sq),
            where=total > 0,
        )
        reject = (statistic > threshold) & in_omega
        l_by_s = u_by_s = None
    else:
        l_by_s, u_by_s = _margin_bounds_by_s(n, alpha)
        s_clamped = np.minimum(total, n)
        low = np.minimum(idx[:, None], idx[None, :])
        high = np.maximum(idx[:, None], idx[None, :])
        reject = ((low < l_by_s[s_clamped]) | (high > u_by_s[s_clamped])) & in_omega
    return DecisionMap(
        n=n,
        alpha=alpha,
        method=method,
        reject=reject,
        in_omega=in_omega,
        l_by_s=l_by_s,
        u_by_s=u_by_s,
    )


def _reject_probability(dm: DecisionMap, p10: float, p01: float) -> float:
    """Exact rejection probability at discordant probabilities (p10, p01)."""
    q01 = p01 / (1.0 - p10)
    if not (0.0 < p10 < 1.0 and 0.0 < q01 < 1.0):
        raise DomainError(
            f"discordant probabilities ({p10!r}, {p01!r}) not interior-feasible"
        )
    k = dm._kernel
    if not k["any_rejected"]:
        return 0.0  # empty sum over the rejection region
    log_terms = (
        k["coeff"]
        + k["rows"] * math.log(p10)
        + k["m"] * math.log1p(-p10)
        + k["cols"] * math.log(q01)
        + k["rest"] * math.log1p(-q01)
    )
    accept_mass = float(np.exp(log_terms).sum())
    return min(max(1.0 - accept_mass, 0.0), 1.0)


def exact_size(dm: DecisionMap, p: NullParams) -> float:
    """Type I error probability at a null point (probability of rejecting)."""
    common = null_discordant_prob(p)
    return _reject_probability(dm, common, common)


def exact_power(dm: DecisionMap, a: AltParams) -> float:
    """Rejection probability at an alternative point."""
    return _reject_probability(dm, a.p10, a.p01)


@dataclass(frozen=True)
class SurfaceGrid:
    """Rectangular grid of size or power values; out-of-domain cells are NaN."""

    axis1: np.ndarray
    axis2: np.ndarray
    values: np.ndarray
    n: int
    alpha: float
    method: str
    kind: str

    def __post_init__(self) -> None:
        if self.values.shape != (len(self.axis1), len(self.axis2)):
            raise DomainError(
                f"value matrix shape {self.values.shape} does not match axes "
                f"({len(self.axis1)}, {len(self.axis2)})"
            )
        finite = self.values[~np.isnan(self.values)]
        if finite.size and (finite.min() < 0.0 or finite.max() > 1.0):
            raise DomainError("surface values outside [0, 1]")
        for arr in (self.axis1, self.axis2, self.values):
            arr.setflags(write=False)


def _sweep_rows(fill_row, n_rows: int, threads: int) -> None:
    """Run fill_row(i) for each grid row, optionally on a thread pool.

    Each call writes a distinct output row, so results are identical for
    any thread count and scheduling order.
    """
    if threads <= 1:
        for i in range(n_rows):
            fill_row(i)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fill_row, range(n_rows)))


def default_rho_grid() -> np.ndarray:
    """100 correlation values from -0.99 to 0.99 in steps of 0.02."""
    return np.linspace(-0.99, 0.99, 100)


def default_pi_grid(steps: int = 99) -> np.ndarray:
    """Equispaced interior points of (0, 1)."""
    return np.arange(1, steps + 1) / (steps + 1.0)


def default_power_grid(steps: int = 99) -> np.ndarray:
    """Discordant-probability grid spanning [0.005, 0.745]."""
    return np.linspace(0.005, 0.745, steps)


def size_surface(
    n: int,
    alpha: float,
    method: str,
    rho_grid: Optional[np.ndarray] = None,
    pi_steps: int = 99,
    threads: int = 1,
) -> SurfaceGrid:
    """Exact size over the (rho, pi) null space on a rectangular grid.

    Grid points with pi outside the admissible interval for their rho are
    emitted as NaN rather than fabricated values; the admissible wedge is
    not rectangular for negative rho.
    """
    rhos = default_rho_grid() if rho_grid is None else np.array(rho_grid, dtype=float)
    pis = default_pi_grid(pi_steps)
    dm = decision_map(n, alpha, method)
    values = np.full((len(rhos), len(pis)), np.nan)

    def fill_row(i: int) -> None:
        rho = rhos[i]
        lo, hi = pi_bounds(rho)
        for j, pi in enumerate(pis):
            if lo < pi < hi:
                common = pi * (1.0 - pi) * (1.0 - rho)
                values[i, j] = _reject_probability(dm, common, common)

    _sweep_rows(fill_row, len(rhos), threads)
    return SurfaceGrid(
        axis1=rhos, axis2=pis, values=values, n=n, alpha=alpha, method=method, kind="size"
    )


def power_surface(
    n: int,
    alpha: float,
    method: str,
    p10_grid: Optional[np.ndarray] = None,
    p01_grid: Optional[np.ndarray] = None,
    threads: int = 1,
) -> SurfaceGrid:
    """Exact power over a rectangular (p10, p01) grid.

    Cells with p10 + p01 >= 1 lie outside the model and are emitted as NaN.
    """
    axis1 = default_power_grid() if p10_grid is None else np.array(p10_grid, dtype=float)
    axis2 = default_power_grid() if p01_grid is None else np.array(p01_grid, dtype=float)
    dm = decision_map(n, alpha, method)
    values = np.full((len(axis1), len(axis2)), np.nan)

    def fill_row(i: int) -> None:
        p10 = axis1[i]
        for j, p01 in enumerate(axis2):
            if p10 + p01 < 1.0:
                values[i, j] = _reject_probability(dm, p10, p01)

    _sweep_rows(fill_row, len(axis1), threads)
    return SurfaceGrid(
        axis1=axis1, axis2=axis2, values=values, n=n, alpha=alpha, method=method, kind="power"
    )


def region_boundary(dm: DecisionMap) -> list[tuple[int, int]]:
    """Accepted sample points with a rejected or out-of-space 4-neighbor.

    Points are ordered by angle around the centroid of the acceptance
    region, which makes the list directly plottable as a closed polyline;
    the tested contract is set equality, the ordering is cosmetic.
    """
    acc = dm.accept
    padded = np.pad(~acc, 1, constant_values=True)
    neighbor_bad = (
        padded[:-2, 1:-1] | padded[2:, 1:-1] | padded[1:-1, :-2] | padded[1:-1, 2:]
    )
    boundary = acc & neighbor_bad
    pts = np.argwhere(boundary)
    if len(pts) == 0:
        return []
    center = np.argwhere(acc).mean(axis=0)
    angles = np.arctan2(pts[:, 1] - center[1], pts[:, 0] - center[0])
    radii = np.hypot(pts[:, 1] - center[1], pts[:, 0] - center[0])
    order = np.lexsort((radii, angles))
    return [(int(a), int(b)) for a, b in pts[order]]


def mc_estimate(
    n: int,
    alpha: float,
    method: str,
    p10: float,
    p01: float,
    trials: int,
    seed: int,
) -> tuple[float, float]:
    """Monte Carlo rejection fraction and its standard error.

    Draws N10 from Bin(n, p10) and N01 from the conditional binomial, then
    looks decisions up in the decision map.  The generator is seeded
    deterministically, so identical inputs reproduce identical output bits.
    """
    if trials < 1:
        raise DomainError(f"trials={trials!r} must be at least 1")
    if not (0.0 <= p10 <= 1.0 and 0.0 <= p01 <= 1.0 and p10 + p01 <= 1.0):
        raise DomainError(f"infeasible discordant probabilities ({p10!r}, {p01!r})")
    dm = decision_map(n, alpha, method)
    rng = np.random.default_rng(seed)
    first = rng.binomial(n, p10, size=trials)
    q01 = p01 / (1.0 - p10) if p10 < 1.0 else 0.0
    second = rng.binomial(n - first, q01)
    rejected = dm.reject[first, second]
    estimate = float(rejected.mean())
    stderr = math.sqrt(estimate * (1.0 - estimate) / trials)
    return estimate, stderr
