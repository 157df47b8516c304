"""Tail-dependence oracles and numerical limit estimators.

Closed forms cover the min-shock survival copula under plain scaling u*w and
under the operator scaling u**A w with A = diag(beta1, beta2), plus the
first-order lower exponent function of the heavy-tail-mixture survival
copula.  The estimators discretize u -> 0 on a geometric grid and fit
log(numerator) against log(u) by least squares, reporting convergence
diagnostics instead of silently extrapolating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .copulas import Copula, MOParams
from .errors import DomainError
from .matpow import TailIndexMatrix, _as_index_matrix, apply_scaling, in_scaling_cone

DEFAULT_FIT_WINDOW = 12
DEFAULT_SLOPE_TOL = 0.05
DEFAULT_RATIO_TOL = 1e-3
DEFAULT_SLOPE_FLOOR = 0.2

_GRID_FLOOR = 1e-12

SIDES = ("lower", "upper")
TARGETS = ("cdf", "exponent")


@dataclass(frozen=True)
class LimitGrid:
    """Geometric grid u_k = u_max * ratio**k, k = 0..count-1, for u -> 0+.

    Values must stay at or above 1e-12 (underflow guard) and the grid needs
    at least 8 points so a fit window exists.
    """

    u_max: float = 1e-2
    ratio: float = 0.5
    count: int = 24

    def __post_init__(self):
        if not (0.0 < self.u_max < 1.0):
            raise DomainError(f"u_max must lie in (0, 1), got {self.u_max!r}")
        if not (0.0 < self.ratio < 1.0):
            raise DomainError(f"ratio must lie in (0, 1), got {self.ratio!r}")
        if int(self.count) != self.count or self.count < 8:
            raise DomainError(f"count must be an integer >= 8, got {self.count!r}")
        if self.u_max * self.ratio ** (self.count - 1) < _GRID_FLOOR:
            raise DomainError("grid tail falls below the 1e-12 underflow guard")

    def values(self) -> np.ndarray:
        return self.u_max * self.ratio ** np.arange(self.count, dtype=float)


@dataclass(frozen=True)
class TailEstimate:
    """Outcome of a log-log limit fit along a shrinking grid.

    value: the estimated limit -- exp(intercept) when converged, 0 when the
        numerator vanishes or decays at a higher order (tail independence),
        +inf when the ratio trace diverges, otherwise the last raw ratio.
    slope, intercept: least-squares fit of log(numerator) vs log(u) on the
        fit window [window[0], window[1]).
    trace: (u, ratio) pairs with u strictly decreasing.
    converged: slope matched the expected one and the last ratios settled.
    diagnostic: "ok" | "outside_cone" | "degenerate" | "tail_independent"
        | "diverging" | "not_converged".
    last_ratio: final raw ratio on the grid.
    """

    value: float
    slope: float
    intercept: float
    trace: tuple
    converged: bool
    window: tuple
    diagnostic: str
    last_ratio: float


def mo_bL_standard(w, params: MOParams) -> tuple[float, float]:
    """Tail function of the min-shock survival copula under plain scaling.

    Returns (kappa, value): the joint decay order kappa = 2 - min(a1, a2)
    and the limit of C(u*w)/u**kappa, which takes one of three closed forms
    depending on the ordering of the joint-shock shares a1 and a2.
    """
    w1, w2 = _positive_pair(w)
    a1 = params.alpha1_12
    a2 = params.alpha2_12
    kappa = 2.0 - min(a1, a2)
    if a1 < a2:
        value = w1 ** (1.0 - a1) * w2
    elif a1 > a2:
        value = w1 * w2 ** (1.0 - a2)
    else:
        value = w1 * w2 * min(w1 ** -a1, w2 ** -a2)
    return kappa, value


def mo_bL_operator(w, params: MOParams) -> float:
    """Order-1 tail function of the min-shock survival copula under the
    operator scaling diag(beta1, beta2):
    b(w) = w1 * w2 * min(w1**-a1, w2**-a2)."""
    w1, w2 = _positive_pair(w)
    return w1 * w2 * min(w1 ** -params.alpha1_12, w2 ** -params.alpha2_12)


def mo_matrix_index(params: MOParams) -> TailIndexMatrix:
    """Diagonal scaling matrix diag(beta1, beta2) under which
    :func:`mo_bL_operator` is order-1 homogeneous."""
    return TailIndexMatrix.diagonal([params.beta1, params.beta2])


def pareto4_lower_exponent(w, lam, beta) -> float:
    """First-order lower exponent function of the heavy-tail-mixture
    survival copula:

    a(w) = w1 + w2 - ((w1**(-1/beta) + w2**(-1/beta) + lam*max(...)) / (1+lam))**(-beta)

    Zero coordinates are handled by continuity (the bracket vanishes).
    """
    w1, w2 = _nonnegative_pair(w)
    lam = _positive_scalar("lam", lam)
    beta = _positive_scalar("beta", beta)
    y1 = w1 ** (-1.0 / beta) if w1 > 0.0 else math.inf
    y2 = w2 ** (-1.0 / beta) if w2 > 0.0 else math.inf
    bracket = (y1 + y2 + lam * max(y1, y2)) / (1.0 + lam)
    return w1 + w2 - bracket ** -beta


def homogeneity_residual(f, matrix, w, t) -> float:
    """Relative defect of order-1 operator homogeneity:
    |f(t**A w) - t*f(w)| / max(t*f(w), 1e-300)."""
    t = float(t)
    if not math.isfinite(t) or t <= 0.0:
        raise DomainError(f"t must be positive and finite, got {t!r}")
    scaled = apply_scaling(matrix, t, np.asarray(w, dtype=float))
    reference = t * float(f(np.asarray(w, dtype=float)))
    return abs(float(f(scaled)) - reference) / max(reference, 1e-300)


def estimate_tail_function(
    copula: Copula,
    matrix,
    w,
    grid: LimitGrid | None = None,
    side: str = "lower",
    target: str = "cdf",
    *,
    fit_window: int = DEFAULT_FIT_WINDOW,
    slope_tol: float = DEFAULT_SLOPE_TOL,
    ratio_tol: float = DEFAULT_RATIO_TOL,
    slope_floor: float = DEFAULT_SLOPE_FLOOR,
) -> TailEstimate:
    """Estimate the order-1 limit of a scaled tail probability as u -> 0.

    The numerator g(u) at the scaled point v = u**A w (clamped into the unit
    cube) is, per (side, target):

        lower/cdf       C(v)
        upper/cdf       P(U > 1 - v)
        lower/exponent  P(U_i <= v_i for some i)
        upper/exponent  P(U_i > 1 - v_i for some i)

    log g is fitted against log u on the trailing ``fit_window`` grid points
    with expected slope 1.  Diagnostics: points outside the scaling cone
    report value 0 with "outside_cone"; an identically-zero window reports
    "degenerate" (value 0); slope below ``slope_floor`` reports "diverging"
    (value +inf); slope above 1 + ``slope_tol`` reports "tail_independent"
    (value 0 at order 1); anything else that fails the slope or spread check
    reports "not_converged" with the last raw ratio as the value.
    """
    a = _as_index_matrix(matrix)
    vec = _checked_weights(w, a.dim, allow_zero=True)
    if copula.dim != a.dim:
        raise DomainError(
            f"copula dimension {copula.dim} does not match matrix dimension {a.dim}"
        )
    grid = grid if grid is not None else LimitGrid()
    _check_side_target(side, target)
    fit_window = _checked_window(fit_window, grid.count)
    us = grid.values()
    if not in_scaling_cone(a, vec, us):
        return TailEstimate(
            value=0.0,
            slope=math.nan,
            intercept=math.nan,
            trace=(),
            converged=False,
            window=(0, 0),
            diagnostic="outside_cone",
            last_ratio=math.nan,
        )
    numerators = np.empty(us.size)
    for k, u in enumerate(us):
        point = np.clip(apply_scaling(a, float(u), vec), 0.0, 1.0)
        numerators[k] = _tail_numerator(copula, point, side, target)
    ratios = numerators / us
    trace = tuple(zip(us.tolist(), ratios.tolist()))
    window = (us.size - fit_window, us.size)
    return _fit_order_one(
        us, numerators, ratios, trace, window,
        slope_tol=slope_tol, ratio_tol=ratio_tol, slope_floor=slope_floor,
    )


def estimate_tail_order(
    copula: Copula,
    w,
    grid: LimitGrid | None = None,
    side: str = "lower",
    *,
    fit_window: int = DEFAULT_FIT_WINDOW,
    slope_tol: float = DEFAULT_SLOPE_TOL,
    ratio_tol: float = DEFAULT_RATIO_TOL,
) -> TailEstimate:
    """Fit the joint-tail decay order along the ray u*w.

    The numerator is C(u*w) on the lower side and P(U > 1 - u*w) on the
    upper side; the fitted slope estimates the order kappa and
    exp(intercept) the accompanying constant.  converged requires
    slope >= 1 - slope_tol (the order is never below 1) and a settled
    normalized ratio g(u)/u**slope over the last three grid points.
    """
    vec = _checked_weights(w, copula.dim, allow_zero=False)
    grid = grid if grid is not None else LimitGrid()
    if side not in SIDES:
        raise DomainError(f"side must be one of {SIDES}, got {side!r}")
    fit_window = _checked_window(fit_window, grid.count)
    us = grid.values()
    numerators = np.empty(us.size)
    for k, u in enumerate(us):
        point = np.clip(u * vec, 0.0, 1.0)
        if side == "lower":
            numerators[k] = copula.cdf(point)
        else:
            numerators[k] = copula.joint_survival(1.0 - point)
    window = (us.size - fit_window, us.size)
    lo, hi = window
    if np.all(numerators[lo:hi] == 0.0):
        ratios = numerators / us
        trace = tuple(zip(us.tolist(), ratios.tolist()))
        return TailEstimate(
            value=0.0, slope=math.nan, intercept=math.nan, trace=trace,
            converged=False, window=window, diagnostic="degenerate",
            last_ratio=float(ratios[-1]),
        )
    slope, intercept = _loglog_fit(us[lo:hi], numerators[lo:hi])
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        ratios = numerators / us ** slope
    trace = tuple(zip(us.tolist(), ratios.tolist()))
    spread = _last_ratio_spread(ratios)
    converged = slope >= 1.0 - slope_tol and spread <= ratio_tol
    return TailEstimate(
        value=math.exp(intercept),
        slope=slope,
        intercept=intercept,
        trace=trace,
        converged=converged,
        window=window,
        diagnostic="ok" if converged else "not_converged",
        last_ratio=float(ratios[-1]),
    )


def _fit_order_one(us, numerators, ratios, trace, window, *, slope_tol, ratio_tol, slope_floor):
    lo, hi = window
    last_ratio = float(ratios[-1])
    gw = numerators[lo:hi]
    uw = us[lo:hi]
    positive = gw > 0.0
    if positive.sum() < 2:
        return TailEstimate(
            value=0.0, slope=math.nan, intercept=math.nan, trace=trace,
            converged=False, window=window, diagnostic="degenerate",
            last_ratio=last_ratio,
        )
    slope, intercept = _loglog_fit(uw[positive], gw[positive])
    if slope < slope_floor:
        return TailEstimate(
            value=math.inf, slope=slope, intercept=intercept, trace=trace,
            converged=False, window=window, diagnostic="diverging",
            last_ratio=last_ratio,
        )
    if slope > 1.0 + slope_tol:
        return TailEstimate(
            value=0.0, slope=slope, intercept=intercept, trace=trace,
            converged=False, window=window, diagnostic="tail_independent",
            last_ratio=last_ratio,
        )
    spread = _last_ratio_spread(ratios)
    if abs(slope - 1.0) <= slope_tol and spread <= ratio_tol:
        return TailEstimate(
            value=math.exp(intercept), slope=slope, intercept=intercept,
            trace=trace, converged=True, window=window, diagnostic="ok",
            last_ratio=last_ratio,
        )
    return TailEstimate(
        value=last_ratio, slope=slope, intercept=intercept, trace=trace,
        converged=False, window=window, diagnostic="not_converged",
        last_ratio=last_ratio,
    )


def _tail_numerator(copula: Copula, v: np.ndarray, side: str, target: str) -> float:
    if target == "cdf":
        if side == "lower":
            return copula.cdf(v)
        return copula.joint_survival(1.0 - v)
    if side == "lower":
        return _lower_union(copula, v)
    return _upper_union(copula, v)


def _lower_union(copula: Copula, v: np.ndarray) -> float:
    """P(U_i <= v_i for some i) by inclusion-exclusion over the cdf."""
    d = copula.dim
    total = 0.0
    point = np.ones(d)
    for mask in range(1, 1 << d):
        bits = 0
        for i in range(d):
            if mask >> i & 1:
                point[i] = v[i]
                bits += 1
            else:
                point[i] = 1.0
        sign = 1.0 if bits & 1 else -1.0
        total += sign * copula.cdf(point)
    return max(total, 0.0)


def _upper_union(copula: Copula, v: np.ndarray) -> float:
    """P(U_i > 1 - v_i for some i) by inclusion-exclusion over joint
    survivals of margins (coordinates off the subset are released to 0)."""
    d = copula.dim
    x = 1.0 - v
    total = 0.0
    point = np.zeros(d)
    for mask in range(1, 1 << d):
        bits = 0
        for i in range(d):
            if mask >> i & 1:
                point[i] = x[i]
                bits += 1
            else:
                point[i] = 0.0
        sign = 1.0 if bits & 1 else -1.0
        total += sign * copula.joint_survival(point)
    return max(total, 0.0)


def _loglog_fit(us: np.ndarray, gs: np.ndarray) -> tuple[float, float]:
    slope, intercept = np.polyfit(np.log(us), np.log(gs), 1)
    return float(slope), float(intercept)


def _last_ratio_spread(ratios: np.ndarray) -> float:
    tail = np.asarray(ratios[-3:], dtype=float)
    center = abs(float(np.mean(tail)))
    if center == 0.0 or not np.all(np.isfinite(tail)):
        return math.inf
    return (float(np.max(tail)) - float(np.min(tail))) / center


def _checked_weights(w, dim: int, *, allow_zero: bool) -> np.ndarray:
    vec = np.asarray(w, dtype=float)
    if vec.shape != (dim,):
        raise DomainError(f"w must be a vector of length {dim}, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise DomainError("w entries must be finite")
    if allow_zero:
        if np.any(vec < 0.0) or not np.any(vec > 0.0):
            raise DomainError("w must be nonnegative with at least one positive entry")
    elif np.any(vec <= 0.0):
        raise DomainError("w entries must be strictly positive")
    return vec


def _check_side_target(side: str, target: str) -> None:
    if side not in SIDES:
        raise DomainError(f"side must be one of {SIDES}, got {side!r}")
    if target not in TARGETS:
        raise DomainError(f"target must be one of {TARGETS}, got {target!r}")


def _checked_window(fit_window: int, count: int) -> int:
    fit_window = int(fit_window)
    if fit_window < 2:
        raise DomainError(f"fit_window must be at least 2, got {fit_window}")
    return min(fit_window, count)


def _positive_pair(w) -> tuple[float, float]:
    vec = np.asarray(w, dtype=float)
    if vec.shape != (2,):
        raise DomainError(f"w must be a vector of length 2, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)) or np.any(vec <= 0.0):
        raise DomainError("w entries must be strictly positive and finite")
    return float(vec[0]), float(vec[1])


def _nonnegative_pair(w) -> tuple[float, float]:
    vec = np.asarray(w, dtype=float)
    if vec.shape != (2,):
        raise DomainError(f"w must be a vector of length 2, got shape {vec.shape}")
    if np.any(np.isnan(vec)) or np.any(vec < 0.0):
        raise DomainError("w entries must be nonnegative")
    return float(vec[0]), float(vec[1])


def _positive_scalar(name: str, value) -> float:
    v = float(value)
    if not math.isfinite(v) or v <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return v
