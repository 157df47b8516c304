"""Evaluable copulas: the min-shock survival copula and its complement, the
heavy-tail shock-mixture survival copula, independence, and generic
survival-copula transforms.

Closed forms switch to log-space evaluation once any coordinate drops below
1e-3, which keeps products of tiny terms accurate down to arguments around
1e-300; direct arithmetic is used above that threshold to preserve 1e-12
accuracy near the upper corner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooLargeError, DomainError

MAX_GENERIC_DIM = 12
_DIRECT_ARITHMETIC_FLOOR = 1e-3
_EXP_OVERFLOW = 709.0


@dataclass(frozen=True)
class MOParams:
    """Shock rates (lambda1, lambda2, lambda12) of the bivariate min-shock
    (Marshall-Olkin) model; all rates must be positive."""

    lambda1: float
    lambda2: float
    lambda12: float

    def __post_init__(self):
        for name in ("lambda1", "lambda2", "lambda12"):
            try:
                v = float(getattr(self, name))
            except (TypeError, ValueError):
                raise DomainError(f"{name} must be a positive number") from None
            if not math.isfinite(v) or v <= 0.0:
                raise DomainError(f"{name} must be positive and finite, got {v!r}")
            object.__setattr__(self, name, v)

    @property
    def total_rate(self) -> float:
        return self.lambda1 + self.lambda2 + self.lambda12

    @property
    def alpha1_12(self) -> float:
        """Joint-shock share lambda12/(lambda1+lambda12) of margin 1."""
        return self.lambda12 / (self.lambda1 + self.lambda12)

    @property
    def alpha2_12(self) -> float:
        """Joint-shock share lambda12/(lambda2+lambda12) of margin 2."""
        return self.lambda12 / (self.lambda2 + self.lambda12)

    @property
    def beta1(self) -> float:
        """(lambda1+lambda12)/total_rate, first diagonal scaling entry."""
        return (self.lambda1 + self.lambda12) / self.total_rate

    @property
    def beta2(self) -> float:
        """(lambda2+lambda12)/total_rate, second diagonal scaling entry."""
        return (self.lambda2 + self.lambda12) / self.total_rate


class Copula:
    """A d-variate copula exposing the cdf and the joint survival function."""

    dim: int

    def cdf(self, u) -> float:
        """P(U <= u componentwise) for u in the unit cube."""
        raise NotImplementedError

    def joint_survival(self, u) -> float:
        """P(U > u componentwise), by inclusion-exclusion over the cdf.

        The generic route sums 2**d signed cdf values and is capped at
        d = 12; subclasses with closed forms override it.
        """
        v = self._checked(u)
        d = self.dim
        if d > MAX_GENERIC_DIM:
            raise DimensionTooLargeError(
                f"generic inclusion-exclusion is capped at dimension {MAX_GENERIC_DIM}"
            )
        total = 0.0
        point = np.ones(d)
        for mask in range(1 << d):
            bits = 0
            for i in range(d):
                if mask >> i & 1:
                    point[i] = v[i]
                    bits += 1
                else:
                    point[i] = 1.0
            sign = -1.0 if bits & 1 else 1.0
            total += sign * self.cdf(point)
        return max(total, 0.0)

    def _checked(self, u) -> np.ndarray:
        arr = np.asarray(u, dtype=float)
        if arr.shape != (self.dim,):
            raise DomainError(
                f"expected a point of dimension {self.dim}, got shape {arr.shape}"
            )
        if np.any(np.isnan(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError("coordinates must lie in [0, 1]")
        return arr


class IndependenceCopula(Copula):
    """Product copula of any dimension."""

    def __init__(self, dim: int):
        d = int(dim)
        if d < 1:
            raise DomainError(f"dim must be at least 1, got {dim!r}")
        self.dim = d

    def cdf(self, u) -> float:
        return float(np.prod(self._checked(u)))

    def joint_survival(self, u) -> float:
        return float(np.prod(1.0 - self._checked(u)))


class MOSurvivalCopula(Copula):
    """Min-shock survival copula
    C(u1, u2) = u1 * u2 * min(u1**-a1, u2**-a2)
    with a1 = lambda12/(lambda1+lambda12), a2 = lambda12/(lambda2+lambda12).
    """

    dim = 2

    def __init__(self, params: MOParams):
        self.params = params

    def cdf(self, u) -> float:
        u1, u2 = self._checked(u)
        if u1 == 0.0 or u2 == 0.0:
            return 0.0
        a1 = self.params.alpha1_12
        a2 = self.params.alpha2_12
        if min(u1, u2) >= _DIRECT_ARITHMETIC_FLOOR:
            return u1 * u2 * min(u1 ** -a1, u2 ** -a2)
        log1 = math.log(u1)
        log2 = math.log(u2)
        return math.exp(log1 + log2 + min(-a1 * log1, -a2 * log2))

    def joint_survival(self, u) -> float:
        v1, v2 = self._checked(u)
        if v1 == 0.0:
            return 1.0 - v2
        if v2 == 0.0:
            return 1.0 - v1
        a1 = self.params.alpha1_12
        a2 = self.params.alpha2_12
        # 1 - v1 - v2 + cdf(v), rearranged with expm1 so the value stays
        # accurate when both coordinates approach 1.
        if -a1 * math.log(v1) <= -a2 * math.log(v2):
            return (1.0 - v1) + v2 * math.expm1((1.0 - a1) * math.log(v1))
        return (1.0 - v2) + v1 * math.expm1((1.0 - a2) * math.log(v2))


class MOComplementCopula(Copula):
    """Copula whose survival copula is the min-shock survival copula:
    C(u1, u2) = u1 + u2 - 1 + (1-u1)(1-u2) min((1-u1)**-a1, (1-u2)**-a2).
    """

    dim = 2

    def __init__(self, params: MOParams):
        self.params = params
        self._hat = MOSurvivalCopula(params)

    def cdf(self, u) -> float:
        u1, u2 = self._checked(u)
        # u1 + (u2 - 1) keeps cdf(u1, 1) = u1 exact for tiny u1.
        return u1 + (u2 - 1.0) + self._hat.cdf((1.0 - u1, 1.0 - u2))

    def joint_survival(self, u) -> float:
        v1, v2 = self._checked(u)
        return self._hat.cdf((1.0 - v1, 1.0 - v2))


class Pareto4SurvivalCopula(Copula):
    """Survival copula of the heavy-tailed shock mixture:
    C(u1, u2) = ((x1 + x2 + lam*max(x1, x2) - 1)/(1 + lam))**(-beta)
    with x_i = u_i**(-1/beta).
    """

    dim = 2

    def __init__(self, lam, beta):
        self.lam = float(lam)
        self.beta = float(beta)
        for name, v in (("lam", self.lam), ("beta", self.beta)):
            if not math.isfinite(v) or v <= 0.0:
                raise DomainError(f"{name} must be positive and finite, got {v!r}")

    def cdf(self, u) -> float:
        u1, u2 = self._checked(u)
        if u1 == 0.0 or u2 == 0.0:
            return 0.0
        lam = self.lam
        beta = self.beta
        if min(u1, u2) >= _DIRECT_ARITHMETIC_FLOOR:
            x1 = u1 ** (-1.0 / beta)
            x2 = u2 ** (-1.0 / beta)
            expr = (x1 + x2 + lam * max(x1, x2) - 1.0) / (1.0 + lam)
            return expr ** -beta
        big1 = -math.log(u1) / beta
        big2 = -math.log(u2) / beta
        top = max(big1, big2)
        inner = (
            math.exp(big1 - top)
            + math.exp(big2 - top)
            + lam
            - math.exp(-top)
        )
        return math.exp(-beta * (top + math.log(inner) - math.log1p(lam)))

    def joint_survival(self, u) -> float:
        v1, v2 = self._checked(u)
        if v1 == 0.0:
            return 1.0 - v2
        if v2 == 0.0:
            return 1.0 - v1
        lam = self.lam
        beta = self.beta
        e1 = _expm1_capped(-math.log(v1) / beta)
        e2 = _expm1_capped(-math.log(v2) / beta)
        t = (e1 + e2 + lam * max(e1, e2)) / (1.0 + lam)
        # 1 - v1 - v2 + cdf(v) with every term kept small near the corner.
        return (1.0 - v1) + (1.0 - v2) + math.expm1(-beta * math.log1p(t))


class _SurvivalCopula(Copula):
    """Survival copula of a base copula: cdf(u) = P(U_base > 1-u)."""

    def __init__(self, base: Copula):
        if base.dim > MAX_GENERIC_DIM:
            raise DimensionTooLargeError(
                f"survival copulas are supported up to dimension {MAX_GENERIC_DIM}"
            )
        self.base = base
        self.dim = base.dim

    def cdf(self, u) -> float:
        return self.base.joint_survival(1.0 - self._checked(u))

    def joint_survival(self, u) -> float:
        return self.base.cdf(1.0 - self._checked(u))


def mo_survival_copula(lambda1, lambda2, lambda12) -> MOSurvivalCopula:
    return MOSurvivalCopula(MOParams(lambda1, lambda2, lambda12))


def mo_complement_copula(lambda1, lambda2, lambda12) -> MOComplementCopula:
    return MOComplementCopula(MOParams(lambda1, lambda2, lambda12))


def pareto4_survival_copula(lam, beta) -> Pareto4SurvivalCopula:
    return Pareto4SurvivalCopula(lam, beta)


def independence_copula(dim: int) -> IndependenceCopula:
    return IndependenceCopula(dim)


def survival_copula_of(copula: Copula) -> Copula:
    """Survival copula C^(u) = P(U > 1-u componentwise).

    Applying the transform twice unwraps to the original copula; generic
    bases are capped at dimension 12.
    """
    if isinstance(copula, _SurvivalCopula):
        return copula.base
    return _SurvivalCopula(copula)


def joint_survival(copula: Copula, u) -> float:
    """P(U > u componentwise) under the given copula."""
    return copula.joint_survival(u)


def _expm1_capped(x: float) -> float:
    if x > _EXP_OVERFLOW:
        return math.inf
    return math.expm1(x)
