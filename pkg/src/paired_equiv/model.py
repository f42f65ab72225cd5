"""Parametrizations of the bivariate binary distribution.

A pair of binary responses measured on the same subject follows a four-cell
joint law (p00, p01, p10, p11).  The same law can be described by the two
marginal positive probabilities together with the correlation coefficient of
the two coordinates, and, under the equivalence hypothesis p1+ = p+1 = pi,
by the pair (pi, rho) alone.  This module holds the three parametrizations,
the conversions between them, and the feasibility bounds that the marginals
impose on the correlation.

All values are plain floats; validation accepts boundary values up to an
absolute tolerance of 1e-12 so that grid endpoints remain usable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, InfeasibleCorrelationError, ZeroVarianceError

#: Absolute tolerance for probability-sum and boundary checks.
TOL = 1e-12


def _check_unit_interval(name: str, value: float) -> None:
    if not (-TOL <= value <= 1.0 + TOL):
        raise DomainError(f"{name}={value!r} outside [0, 1]")


@dataclass(frozen=True)
class JointTable:
    """The four joint probabilities of a paired binary response.

    Cell pij is the probability that the first coordinate equals i and the
    second equals j.  Cells must be probabilities and sum to one.
    """

    p00: float
    p01: float
    p10: float
    p11: float

    def __post_init__(self) -> None:
        for name in ("p00", "p01", "p10", "p11"):
            _check_unit_interval(name, getattr(self, name))
        total = self.p00 + self.p01 + self.p10 + self.p11
        if abs(total - 1.0) > TOL:
            raise DomainError(f"joint probabilities sum to {total!r}, expected 1")


@dataclass(frozen=True)
class MarginalParams:
    """Marginal description: positive probabilities of each coordinate plus
    their correlation coefficient.

    ``p1plus`` is the first coordinate's positive probability, ``pplus1``
    the second's.  ``rho`` must lie strictly inside the feasible interval
    returned by :func:`rho_bounds` (boundary values pass within 1e-12).
    """

    p1plus: float
    pplus1: float
    rho: float

    def __post_init__(self) -> None:
        for name in ("p1plus", "pplus1"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise ZeroVarianceError(f"{name}={v!r} gives a degenerate marginal")
        lo, hi = rho_bounds(self.p1plus, self.pplus1)
        if not (lo - TOL <= self.rho <= hi + TOL):
            raise InfeasibleCorrelationError(
                f"rho={self.rho!r} outside feasible range [{lo!r}, {hi!r}]"
            )


@dataclass(frozen=True)
class NullParams:
    """A point of the equivalence-hypothesis parameter space.

    Under equivalence both marginals share the positive probability ``pi``,
    and ``pi`` is constrained by the correlation: for negative ``rho`` it
    must lie in (-rho/(1-rho), 1/(1-rho)).
    """

    pi: float
    rho: float

    def __post_init__(self) -> None:
        if not (-1.0 + TOL <= self.rho <= 1.0 - TOL):
            raise DomainError(f"rho={self.rho!r} outside (-1, 1)")
        lo, hi = pi_bounds(self.rho)
        if not (lo - TOL <= self.pi <= hi + TOL) or not (TOL <= self.pi <= 1.0 - TOL):
            raise DomainError(
                f"pi={self.pi!r} outside the admissible interval ({lo!r}, {hi!r}) "
                f"for rho={self.rho!r}"
            )


@dataclass(frozen=True)
class AltParams:
    """A pair of discordant probabilities describing an alternative point.

    Only feasibility is enforced; equality p10 == p01 is allowed so that the
    same point type can be evaluated on the diagonal.
    """

    p10: float
    p01: float

    def __post_init__(self) -> None:
        for name in ("p10", "p01"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise DomainError(f"{name}={v!r} outside (0, 1)")
        if self.p10 + self.p01 >= 1.0:
            raise DomainError(
                f"p10 + p01 = {self.p10 + self.p01!r} must be below 1"
            )


def rho_bounds(p1plus: float, pplus1: float) -> tuple[float, float]:
    """Feasible range of the correlation coefficient given both marginals.

    The upper bound is sqrt(p+1(1-p1+)/(p1+(1-p+1))) when p1+ > p+1, its
    reciprocal form when p1+ < p+1, and 1 when the marginals agree.  The
    lower bound switches branch on whether p1+ + p+1 exceeds 1; the two
    branches agree at equality.  The returned pair is clamped to [-1, 1].
    """
    a, b = p1plus, pplus1
    for name, v in (("p1plus", a), ("pplus1", b)):
        if not (0.0 < v < 1.0):
            raise ZeroVarianceError(f"{name}={v!r} gives a degenerate marginal")
    if a > b:
        upper = math.sqrt((b * (1.0 - a)) / (a * (1.0 - b)))
    elif a < b:
        upper = math.sqrt((a * (1.0 - b)) / (b * (1.0 - a)))
    else:
        upper = 1.0
    if a + b >= 1.0:
        lower = -math.sqrt(((1.0 - a) * (1.0 - b)) / (a * b))
    else:
        lower = -math.sqrt((a * b) / ((1.0 - a) * (1.0 - b)))
    return max(lower, -1.0), min(upper, 1.0)


def pi_bounds(rho: float) -> tuple[float, float]:
    """Admissible range of the common positive probability at a given rho.

    Nonnegative correlation imposes no constraint beyond (0, 1); negative
    correlation narrows the range to (-rho/(1-rho), 1/(1-rho)).  The two
    endpoints always sum to one.
    """
    if rho >= 0.0:
        return 0.0, 1.0
    return -rho / (1.0 - rho), 1.0 / (1.0 - rho)


def joint_to_marginal(t: JointTable) -> MarginalParams:
    """Convert a joint table to the marginal parametrization.

    Raises :class:`ZeroVarianceError` when either marginal is degenerate.
    """
    p1plus = t.p10 + t.p11
    pplus1 = t.p01 + t.p11
    for name, v in (("p1plus", p1plus), ("pplus1", pplus1)):
        if not (0.0 < v < 1.0):
            raise ZeroVarianceError(f"{name}={v!r} gives a degenerate marginal")
    sigma1 = math.sqrt(p1plus * (1.0 - p1plus))
    sigma2 = math.sqrt(pplus1 * (1.0 - pplus1))
    rho = (t.p11 - p1plus * pplus1) / (sigma1 * sigma2)
    return MarginalParams(p1plus=p1plus, pplus1=pplus1, rho=rho)


def marginal_to_joint(m: MarginalParams) -> JointTable:
    """Convert marginal parameters back to the four joint probabilities.

    p11 = p1+ p+1 + rho sigma1 sigma2, with the remaining cells by
    subtraction.  Values within 1e-12 outside [0, 1] are clamped.
    """
    sigma1 = math.sqrt(m.p1plus * (1.0 - m.p1plus))
    sigma2 = math.sqrt(m.pplus1 * (1.0 - m.pplus1))
    p11 = m.p1plus * m.pplus1 + m.rho * sigma1 * sigma2
    p10 = m.p1plus - p11
    p01 = m.pplus1 - p11
    p00 = 1.0 - p11 - p10 - p01

    def clamp(v: float) -> float:
        if -TOL <= v < 0.0:
            return 0.0
        if 1.0 < v <= 1.0 + TOL:
            return 1.0
        return v

    cells = tuple(clamp(v) for v in (p00, p01, p10, p11))
    if any(v < 0.0 or v > 1.0 for v in cells):
        raise InfeasibleCorrelationError(
            f"rho={m.rho!r} infeasible for marginals "
            f"({m.p1plus!r}, {m.pplus1!r}): cells {cells!r}"
        )
    return JointTable(*cells)


def null_discordant_prob(p: NullParams) -> float:
    """Common discordant probability pi(1-pi)(1-rho) at a null point.

    Its value lies in (0, 1/2]; the supremum 1/2 is approached only as
    rho tends to -1, which is outside the admissible range.
    """
    return p.pi * (1.0 - p.pi) * (1.0 - p.rho)
