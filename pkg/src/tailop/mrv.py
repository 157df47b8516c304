"""Non-standard multivariate regular variation.

An intensity measure is the Radon limit of rescaled joint exceedance
probabilities P(X_i > t**gamma_i w_i, ...)/R(t) with R(t) = t**-beta L(t).
This module provides closed-form intensity oracles for the shipped models,
the two directions of the copula/intensity correspondence, and a
semi-analytic verifier that traces the prelimit ratio along a t-grid
(no sampling involved).

Measures concentrated on the interior cone (all coordinates positive) are
flagged ``hidden``: their mass on regions touching the axes is infinite at
this normalization while one-dimensional faces carry none, so only upper
orthants (w1,inf] x ... x (wd,inf] are meaningful.  For those,
box_complement is defined as the upper-orthant mass and marginal_mass
returns 0 by convention; reports label them accordingly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .copulas import Copula, MOParams
from .errors import DomainError
from .matpow import TailIndexMatrix
from .taildep import _upper_union

DEFAULT_REL_TOL = 0.02
DEFAULT_T_GRID = tuple(float(t) for t in np.logspace(2.0, 8.0, 7))

FULL_CONE_LABEL = "intensity"
HIDDEN_LABEL = "hidden interior-cone intensity"


@dataclass(frozen=True)
class IntensityMeasure:
    """Limit measure of a non-standard regularly varying vector.

    box_complement(w) is mu(([0,w1] x ... x [0,wd])^c) for full-cone
    measures and the upper-orthant mass for hidden ones.  upper_orthant and
    marginal_mass are optional closed forms used by consistency checks;
    marginal_mass(i, x) is the mass of the band where coordinate i exceeds
    x and the others are unconstrained.
    """

    dim: int
    beta: float
    gamma: tuple
    box_complement: Callable
    upper_orthant: Optional[Callable] = None
    marginal_mass: Optional[Callable] = None
    hidden: bool = False
    label: str = ""

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise DomainError(f"dim must be a positive integer, got {self.dim!r}")
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise DomainError(f"beta must be positive and finite, got {self.beta!r}")
        gamma = tuple(float(g) for g in self.gamma)
        if len(gamma) != self.dim or any(not (math.isfinite(g) and g > 0.0) for g in gamma):
            raise DomainError("gamma must be a tuple of positive scaling indexes, one per coordinate")
        object.__setattr__(self, "gamma", gamma)
        if not self.label:
            object.__setattr__(self, "label", HIDDEN_LABEL if self.hidden else FULL_CONE_LABEL)

    def scaled(self, s: float, w) -> np.ndarray:
        """The scaling action s**E w with E = diag(gamma)."""
        s = _positive_scalar("s", s)
        w = _positive_vector(w, self.dim)
        return s ** np.asarray(self.gamma) * w


def scaling_defect(mu: IntensityMeasure, s, w) -> float:
    """Relative defect of mu's scaling law
    box_complement(s**E w) = s**-beta * box_complement(w)."""
    s = _positive_scalar("s", s)
    reference = s ** -mu.beta * float(mu.box_complement(_positive_vector(w, mu.dim)))
    value = float(mu.box_complement(mu.scaled(s, w)))
    return abs(value - reference) / max(abs(reference), 1e-300)


def orthant_consistency_defect(mu: IntensityMeasure, w) -> float:
    """Relative defect of the planar decomposition
    box_complement = marginal_mass(0) + marginal_mass(1) - upper_orthant.

    Only meaningful for full-cone measures with both optional closed forms
    supplied; hidden measures place infinite mass on axis-touching regions
    and are rejected.
    """
    if mu.dim != 2:
        raise DomainError("orthant consistency is a planar (dim 2) identity")
    if mu.hidden:
        raise DomainError("hidden interior-cone measures do not satisfy the planar box decomposition")
    if mu.upper_orthant is None or mu.marginal_mass is None:
        raise DomainError("consistency requires upper_orthant and marginal_mass closed forms")
    w = _positive_vector(w, 2)
    box = float(mu.box_complement(w))
    recombined = (
        float(mu.marginal_mass(0, float(w[0])))
        + float(mu.marginal_mass(1, float(w[1])))
        - float(mu.upper_orthant(w))
    )
    return abs(box - recombined) / max(abs(box), 1e-300)


class NonStandardRVModel:
    """A random vector specified by a copula and regularly varying margins,
    together with the diagonal scaling exponents lam.

    Derived quantities (reference margin index ``reference``, default 0):
    beta = alpha_ref, gamma_i = lam_i * beta / alpha_i and
    r_i = l_i / l_ref**lam_i where l_i is the slowly varying limit of
    margin i.  Models with min(lam) < 1 are flagged hidden: joint
    exceedances at this scaling decay faster than single-margin ones, so
    the limit measure lives on the interior cone.
    """

    def __init__(self, copula: Copula, margins, lam, reference: int = 0):
        margins = tuple(margins)
        lam = tuple(float(x) for x in lam)
        if copula.dim != len(margins) or copula.dim != len(lam):
            raise DomainError(
                f"copula dimension {copula.dim} does not match "
                f"{len(margins)} margins and {len(lam)} scaling exponents"
            )
        for k, margin in enumerate(margins):
            if not getattr(margin, "regularly_varying", False):
                raise DomainError(f"margin {k} is not regularly varying")
        if any(not (math.isfinite(x) and x > 0.0) for x in lam):
            raise DomainError("lam entries must be positive and finite")
        reference = int(reference)
        if not 0 <= reference < copula.dim:
            raise DomainError(f"reference must index a margin, got {reference}")
        self.copula = copula
        self.margins = margins
        self.lam = lam
        self.reference = reference
        self.alphas = tuple(float(m.alpha) for m in margins)
        self.limits = tuple(float(m.slowly_varying_limit) for m in margins)
        if any(l <= 0.0 for l in self.limits):
            raise DomainError("margins must have positive slowly varying limits")
        self.beta = self.alphas[reference]
        self.gamma = tuple(l * self.beta / a for l, a in zip(lam, self.alphas))
        l_ref = self.limits[reference]
        self.r = tuple(l / l_ref ** lam_i for l, lam_i in zip(self.limits, lam))
        self.hidden = min(lam) < 1.0

    @property
    def dim(self) -> int:
        return self.copula.dim

    def matrix(self) -> TailIndexMatrix:
        return TailIndexMatrix.diagonal(self.lam)

    def scaling(self, t) -> float:
        """The normalization R(t): the reference margin's survival at t,
        which is t**-beta times a slowly varying factor."""
        t = _positive_scalar("t", t)
        return float(self.margins[self.reference].survival(t))

    def threshold(self, t, w) -> np.ndarray:
        """Componentwise thresholds t**gamma_i * w_i."""
        t = _positive_scalar("t", t)
        w = _positive_vector(w, self.dim)
        return np.array([t ** g for g in self.gamma]) * w

    def _margin_survivals(self, t, w) -> np.ndarray:
        x = self.threshold(t, w)
        return np.array([float(m.survival(v)) for m, v in zip(self.margins, x)])

    def union_probability(self, t, w) -> float:
        """P(X_i > t**gamma_i w_i for some i)."""
        return _upper_union(self.copula, self._margin_survivals(t, w))

    def orthant_probability(self, t, w) -> float:
        """P(X_i > t**gamma_i w_i for every i)."""
        s = self._margin_survivals(t, w)
        return self.copula.joint_survival(1.0 - s)

    def exceedance_probability(self, t, w) -> float:
        """The prelimit numerator matching this model's intensity support:
        the exceedance union for full-cone models, the joint exceedance for
        hidden ones."""
        if self.hidden:
            return self.orthant_probability(t, w)
        return self.union_probability(t, w)


def intensity_from_copula(model: NonStandardRVModel, tail_function) -> IntensityMeasure:
    """Build the intensity measure of ``model`` from an order-1 tail limit
    of its copula under the scaling u**diag(lam).

    ``tail_function`` maps a positive weight vector to the copula-scale
    limit; the measure is its composition with w_i -> w_i**-alpha_i * r_i.
    Pass the exceedance-union limit for full-cone models and the
    joint-exceedance limit for hidden ones; the returned measure inherits
    the model's hidden flag and labeling.
    """
    alphas = np.asarray(model.alphas)
    r = np.asarray(model.r)
    dim = model.dim

    def box_complement(w):
        w = _positive_vector(w, dim)
        return float(tail_function(w ** -alphas * r))

    return IntensityMeasure(
        dim=dim,
        beta=model.beta,
        gamma=model.gamma,
        box_complement=box_complement,
        upper_orthant=box_complement if model.hidden else None,
        marginal_mass=(lambda i, x: 0.0) if model.hidden else None,
        hidden=model.hidden,
    )


class ExponentFunction:
    """Order-1 copula-scale tail limit extracted from an intensity measure.

    Callable on positive weight vectors; ``matrix`` is the diagonal scaling
    matrix diag(alpha_i * gamma_i / beta) under which the function is
    order-1 homogeneous.
    """

    def __init__(self, measure: IntensityMeasure, alphas, limits):
        alphas = tuple(float(a) for a in alphas)
        limits = tuple(float(l) for l in limits)
        if len(alphas) != measure.dim or len(limits) != measure.dim:
            raise DomainError("alphas and limits must supply one entry per coordinate")
        if any(not (math.isfinite(a) and a > 0.0) for a in alphas):
            raise DomainError("alphas must be positive and finite")
        if any(not (math.isfinite(l) and l > 0.0) for l in limits):
            raise DomainError("limits must be positive and finite")
        self.measure = measure
        self.alphas = alphas
        self.limits = limits
        diag = [a * g / measure.beta for a, g in zip(alphas, measure.gamma)]
        self.matrix = TailIndexMatrix.diagonal(diag)

    def __call__(self, w) -> float:
        w = _positive_vector(w, self.measure.dim)
        x = np.array([
            wi ** (-1.0 / a) * l ** (1.0 / a)
            for wi, a, l in zip(w, self.alphas, self.limits)
        ])
        return float(self.measure.box_complement(x))


def exponent_from_intensity(measure: IntensityMeasure, alphas, limits) -> ExponentFunction:
    """Recover the copula-scale tail limit from an intensity measure and
    the marginal tail data (indexes alpha_i, slowly varying limits l_i).

    Composing with :func:`intensity_from_copula` is the identity whenever
    the reference margin's slowly varying limit is 1.
    """
    return ExponentFunction(measure, alphas, limits)


def mo_pareto_intensity_oracle(params: MOParams, alphas) -> IntensityMeasure:
    """Closed-form hidden intensity of the min-shock complement copula
    paired with Pareto-type margins of indexes alphas:

    mu((w1,inf] x (w2,inf]) = w1**-alpha1 * w2**-alpha2
                              * min(w1**(a1*alpha1), w2**(a2*alpha2))

    with a_i the joint-shock shares of ``params``.  Both scaling exponents
    lam_i sit strictly below 1, so the measure is hidden: box_complement
    coincides with upper_orthant and marginal masses are 0 by convention.
    """
    alphas = tuple(float(a) for a in alphas)
    if len(alphas) != 2 or any(not (math.isfinite(a) and a > 0.0) for a in alphas):
        raise DomainError("alphas must be two positive finite marginal indexes")
    a1 = params.alpha1_12
    a2 = params.alpha2_12
    alpha1, alpha2 = alphas
    beta = alpha1
    gamma = (params.beta1, params.beta2 * alpha1 / alpha2)

    def upper_orthant(w):
        w = _positive_vector(w, 2)
        w1, w2 = float(w[0]), float(w[1])
        return w1 ** -alpha1 * w2 ** -alpha2 * min(w1 ** (a1 * alpha1), w2 ** (a2 * alpha2))

    def marginal_mass(i, x):
        _checked_coordinate(i, 2)
        _positive_scalar("x", x)
        return 0.0

    return IntensityMeasure(
        dim=2,
        beta=beta,
        gamma=gamma,
        box_complement=upper_orthant,
        upper_orthant=upper_orthant,
        marginal_mass=marginal_mass,
        hidden=True,
    )


def pareto4_intensity_oracle(lam, beta, gamma1, gamma2) -> IntensityMeasure:
    """Closed-form full-cone intensity of the heavy-tail mixture model:

    mu(([0,x1] x [0,x2])^c) = sum_i ((1+lam) x_i**(1/gamma_i))**-beta
                              - (x1**(1/gamma1) + x2**(1/gamma2) + lam*max(...))**-beta
    """
    lam = _positive_scalar("lam", lam)
    beta = _positive_scalar("beta", beta)
    gamma1 = _positive_scalar("gamma1", gamma1)
    gamma2 = _positive_scalar("gamma2", gamma2)

    def _pulled_back(x):
        x = _positive_vector(x, 2)
        return float(x[0]) ** (1.0 / gamma1), float(x[1]) ** (1.0 / gamma2)

    def box_complement(x):
        y1, y2 = _pulled_back(x)
        marginal = ((1.0 + lam) * y1) ** -beta + ((1.0 + lam) * y2) ** -beta
        return marginal - (y1 + y2 + lam * max(y1, y2)) ** -beta

    def upper_orthant(x):
        y1, y2 = _pulled_back(x)
        return (y1 + y2 + lam * max(y1, y2)) ** -beta

    def marginal_mass(i, x):
        _checked_coordinate(i, 2)
        x = _positive_scalar("x", x)
        g = gamma1 if i == 0 else gamma2
        return ((1.0 + lam) * x ** (1.0 / g)) ** -beta

    return IntensityMeasure(
        dim=2,
        beta=beta,
        gamma=(gamma1, gamma2),
        box_complement=box_complement,
        upper_orthant=upper_orthant,
        marginal_mass=marginal_mass,
        hidden=False,
    )


@dataclass(frozen=True)
class PointCheck:
    """Prelimit trace at one weight vector: ratios along the t-grid, the
    oracle limit, and the relative deviation at the largest t."""

    w: tuple
    trace: tuple
    limit: float
    final_ratio: float
    rel_deviation: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    """Aggregate of per-point prelimit checks against an intensity oracle."""

    checks: tuple
    passed: bool
    max_rel_deviation: float
    rel_tol: float
    label: str
    t_grid: tuple

    def to_rows(self):
        """Flat per-point rows for serialization."""
        rows = []
        for check in self.checks:
            rows.append({
                **{f"w{k + 1}": wk for k, wk in enumerate(check.w)},
                "limit": check.limit,
                "final_ratio": check.final_ratio,
                "rel_deviation": check.rel_deviation,
                "passed": check.passed,
            })
        return rows


def verify_nonstandard_rv(
    joint_survival_complement,
    scaling_function,
    mu: IntensityMeasure,
    t_grid=None,
    w_grid=None,
    rel_tol: float = DEFAULT_REL_TOL,
) -> VerificationReport:
    """Trace the prelimit ratio P(exceedance at t)/R(t) along an increasing
    t-grid and compare the final ratio against mu.box_complement.

    ``joint_survival_complement(t, w)`` must return the probability of the
    exceedance event matching the measure's support: the union event
    P(X_i > t**gamma_i w_i for some i) for full-cone measures, the joint
    event (every i) for hidden ones.  ``scaling_function(t)`` is the
    normalization R(t) = t**-beta L(t).  Deviations are data, not errors:
    the report flags each point and the aggregate, and never raises on a
    failed comparison.
    """
    t_grid = DEFAULT_T_GRID if t_grid is None else tuple(float(t) for t in t_grid)
    if len(t_grid) < 1 or any(not (math.isfinite(t) and t > 0.0) for t in t_grid):
        raise DomainError("t_grid must hold positive finite values")
    if any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise DomainError("t_grid must be strictly increasing")
    if w_grid is None:
        if mu.dim != 2:
            raise DomainError("a w_grid is required when dim != 2")
        base = (0.5, 1.0, 2.0)
        w_grid = [(w1, w2) for w1 in base for w2 in base]
    if not (0.0 < rel_tol < 1.0):
        raise DomainError(f"rel_tol must lie in (0, 1), got {rel_tol!r}")
    checks = []
    for w in w_grid:
        vec = _positive_vector(w, mu.dim)
        trace = []
        for t in t_grid:
            denom = float(scaling_function(t))
            if not (math.isfinite(denom) and denom > 0.0):
                raise DomainError(f"scaling_function must be positive and finite, got {denom!r} at t={t!r}")
            trace.append((t, float(joint_survival_complement(t, vec)) / denom))
        limit = float(mu.box_complement(vec))
        final = trace[-1][1]
        deviation = abs(final - limit) / max(abs(limit), 1e-300)
        checks.append(PointCheck(
            w=tuple(float(x) for x in vec),
            trace=tuple(trace),
            limit=limit,
            final_ratio=final,
            rel_deviation=deviation,
            passed=math.isfinite(deviation) and deviation <= rel_tol,
        ))
    max_dev = max(check.rel_deviation for check in checks)
    return VerificationReport(
        checks=tuple(checks),
        passed=all(check.passed for check in checks),
        max_rel_deviation=max_dev,
        rel_tol=float(rel_tol),
        label=mu.label,
        t_grid=t_grid,
    )


def _positive_vector(w, dim: int) -> np.ndarray:
    vec = np.asarray(w, dtype=float)
    if vec.shape != (dim,):
        raise DomainError(f"expected a vector of length {dim}, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)) or np.any(vec <= 0.0):
        raise DomainError("coordinates must be strictly positive and finite")
    return vec


def _positive_scalar(name: str, value) -> float:
    v = float(value)
    if not math.isfinite(v) or v <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return v


def _checked_coordinate(i, dim: int) -> int:
    i = int(i)
    if not 0 <= i < dim:
        raise DomainError(f"coordinate index must lie in [0, {dim}), got {i}")
    return i
