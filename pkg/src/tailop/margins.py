"""Marginal survival functions: regularly varying families and the
exponential margin used to map shock-model samples to copula scale."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError

DEFAULT_DIAGNOSTIC_GRID = np.logspace(1.0, 6.0, 26)
BISECTION_TOL = 1e-12
BISECTION_HI = 1e18


def _positive_scalar(name: str, value) -> float:
    v = float(value)
    if not math.isfinite(v) or v <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return v


@dataclass(frozen=True)
class RegularlyVaryingMargin:
    """Margin with survival(t) ~ l * t**(-alpha) as t grows.

    survival and inverse_survival are vectorized callables;
    slowly_varying_limit is the constant l the scaled tail converges to.
    """

    alpha: float
    survival: Callable
    inverse_survival: Callable
    slowly_varying_limit: float
    regularly_varying = True


@dataclass(frozen=True)
class ExponentialMargin:
    """Light-tailed exponential margin; not regularly varying."""

    rate: float
    survival: Callable
    inverse_survival: Callable
    regularly_varying = False


def pareto_margin(alpha) -> RegularlyVaryingMargin:
    """Pareto margin with survival (1+t)**(-alpha); the slowly varying part
    tends to 1."""
    a = _positive_scalar("alpha", alpha)

    def survival(t):
        return (1.0 + np.maximum(np.asarray(t, dtype=float), 0.0)) ** -a

    def inverse_survival(u):
        return _checked_unit(u) ** (-1.0 / a) - 1.0

    return RegularlyVaryingMargin(
        alpha=a,
        survival=survival,
        inverse_survival=inverse_survival,
        slowly_varying_limit=1.0,
    )


def pareto4_margin(lam, beta, gamma) -> RegularlyVaryingMargin:
    """Margin of the heavy-tailed shock mixture:
    survival(t) = (1 + (1+lam) * t**(1/gamma))**(-beta).

    Tail index alpha = beta/gamma with slowly varying limit (1+lam)**(-beta).
    """
    lam = _positive_scalar("lam", lam)
    beta = _positive_scalar("beta", beta)
    gamma = _positive_scalar("gamma", gamma)

    def survival(t):
        t = np.maximum(np.asarray(t, dtype=float), 0.0)
        return (1.0 + (1.0 + lam) * t ** (1.0 / gamma)) ** -beta

    def inverse_survival(u):
        u = _checked_unit(u)
        return ((u ** (-1.0 / beta) - 1.0) / (1.0 + lam)) ** gamma

    return RegularlyVaryingMargin(
        alpha=beta / gamma,
        survival=survival,
        inverse_survival=inverse_survival,
        slowly_varying_limit=(1.0 + lam) ** -beta,
    )


def mo_exponential_margin(rate) -> ExponentialMargin:
    """Exponential margin exp(-rate*t) of a min-shock component."""
    r = _positive_scalar("rate", rate)

    def survival(t):
        return np.exp(-r * np.maximum(np.asarray(t, dtype=float), 0.0))

    def inverse_survival(u):
        return -np.log(_checked_unit(u)) / r

    return ExponentialMargin(rate=r, survival=survival, inverse_survival=inverse_survival)


def margin_from_survival(alpha, survival, slowly_varying_limit, inverse_survival=None) -> RegularlyVaryingMargin:
    """Wrap a user-supplied survival function, falling back to a bisection
    inverse on [0, 1e18] when no closed-form inverse is given."""
    a = _positive_scalar("alpha", alpha)
    limit = _positive_scalar("slowly_varying_limit", slowly_varying_limit)
    if inverse_survival is None:
        def inverse_survival(u):
            return bisection_inverse(survival, u)
    return RegularlyVaryingMargin(
        alpha=a,
        survival=survival,
        inverse_survival=inverse_survival,
        slowly_varying_limit=limit,
    )


def bisection_inverse(survival, u, lo: float = 0.0, hi: float = BISECTION_HI, tol: float = BISECTION_TOL) -> float:
    """Solve survival(t) = u for a nonincreasing survival function.

    The bracket [lo, hi] is halved until its width drops below
    tol * max(1, lo); raises DomainError when u is not bracketed.
    """
    u = float(u)
    if not (0.0 < u <= 1.0):
        raise DomainError(f"u must lie in (0, 1], got {u!r}")
    lo = float(lo)
    hi = float(hi)
    if not lo < hi:
        raise DomainError("bracket must satisfy lo < hi")
    if float(survival(lo)) < u:
        raise DomainError(f"survival({lo}) < u: no solution in the bracket")
    if float(survival(hi)) > u:
        raise DomainError(f"survival({hi}) > u: the bracket does not reach level u")
    while hi - lo > tol * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if float(survival(mid)) >= u:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def rv_index_diagnostic(margin, x, t_grid=None) -> np.ndarray:
    """Ratio trace survival(t*x)/survival(t) along increasing t.

    For a margin with tail index alpha the trace converges to x**(-alpha).
    Returns an array with rows (t, ratio); the default grid is 26 points
    log-spaced over [10, 1e6].
    """
    x = _positive_scalar("x", x)
    grid = DEFAULT_DIAGNOSTIC_GRID if t_grid is None else np.asarray(t_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("t_grid must be a nonempty 1-d grid")
    if np.any(grid <= 0.0) or (grid.size > 1 and np.any(np.diff(grid) <= 0.0)):
        raise DomainError("t_grid must be positive and strictly increasing")
    ratios = np.asarray(margin.survival(grid * x), dtype=float) / np.asarray(
        margin.survival(grid), dtype=float
    )
    return np.column_stack([grid, ratios])


def _checked_unit(u):
    arr = np.asarray(u, dtype=float)
    if np.any(arr <= 0.0) or np.any(arr > 1.0):
        raise DomainError("u must lie in (0, 1]")
    return arr
