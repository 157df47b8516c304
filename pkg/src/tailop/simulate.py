"""Seeded Monte Carlo samplers and empirical tail estimators.

Samplers draw with numpy's default generator from a 64-bit seed in a fixed
column order, so a given (seed, params, n) triple reproduces bitwise.  The
empirical counterparts of the tail functions report a three-standard-error
binomial half width next to each estimate, for cross-checking the closed
forms without a formal test framework.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .copulas import MOParams
from .errors import DomainError, MarginMismatchError, TooFewTailPointsError
from .matpow import _as_index_matrix, apply_scaling
from .taildep import SIDES, TARGETS

MIN_TAIL_HITS = 20


@dataclass(frozen=True)
class SampleBatch:
    """Immutable columns of simulated reals plus the generating record.

    params is a provenance map (family name and parameter values) carried
    along so transformed batches stay self-describing.
    """

    names: tuple
    columns: tuple
    seed: int
    params: dict

    def __post_init__(self):
        names = tuple(str(x) for x in self.names)
        columns = tuple(np.asarray(c, dtype=float) for c in self.columns)
        if len(names) != len(columns) or not columns:
            raise DomainError("names and columns must align and be nonempty")
        n = columns[0].size
        if n < 1:
            raise DomainError("batches need at least one sample")
        for name, col in zip(names, columns):
            if col.shape != (n,):
                raise DomainError(f"column {name} has shape {col.shape}, expected ({n},)")
            if not np.all(np.isfinite(col)):
                raise DomainError(f"column {name} holds non-finite values")
            col.setflags(write=False)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "columns", columns)
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "params", dict(self.params))

    @property
    def n(self) -> int:
        return self.columns[0].size

    @property
    def dim(self) -> int:
        return len(self.columns)

    def column(self, name: str) -> np.ndarray:
        try:
            return self.columns[self.names.index(name)]
        except ValueError:
            raise DomainError(f"no column named {name!r}; have {self.names}") from None

    def to_csv(self, path) -> None:
        """Write header plus one row per sample; floats are printed with
        repr so the decimal text round-trips to the same IEEE-754 value."""
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(self.names)
            for row in zip(*self.columns):
                writer.writerow([repr(float(x)) for x in row])


def sample_mo(params: MOParams, n, seed) -> SampleBatch:
    """Draw n pairs from the min-shock bivariate exponential law.

    Columns E1, E2, E12 are drawn in that order with means 1/rate, then
    T_i = min(E_i, E12).  The shared shock puts an atom on the diagonal:
    exact ties T1 == T2 occur with probability lambda12 / total_rate.
    """
    n = _checked_count(n)
    rng = np.random.default_rng(_checked_seed(seed))
    e1 = rng.exponential(1.0 / params.lambda1, n)
    e2 = rng.exponential(1.0 / params.lambda2, n)
    e12 = rng.exponential(1.0 / params.lambda12, n)
    t1 = np.minimum(e1, e12)
    t2 = np.minimum(e2, e12)
    record = {
        "family": "mo",
        "lambda1": params.lambda1,
        "lambda2": params.lambda2,
        "lambda12": params.lambda12,
    }
    return SampleBatch(names=("T1", "T2"), columns=(t1, t2), seed=seed, params=record)


def sample_pareto4(lam, beta, gamma1, gamma2, n, seed) -> SampleBatch:
    """Draw n pairs from the heavy-tail mixture X_i = (T_i / Z)**gamma_i.

    (T1, T2) is the min-shock exponential pair with rates (1, 1, lam) and Z
    an independent gamma variable with shape beta and scale 1; columns are
    drawn in the order E1, E2, E12, Z.  Joint survival:
    (1 + x1**(1/gamma1) + x2**(1/gamma2) + lam*max(...))**-beta.
    """
    lam = _checked_positive("lam", lam)
    beta = _checked_positive("beta", beta)
    gamma1 = _checked_positive("gamma1", gamma1)
    gamma2 = _checked_positive("gamma2", gamma2)
    n = _checked_count(n)
    rng = np.random.default_rng(_checked_seed(seed))
    e1 = rng.exponential(1.0, n)
    e2 = rng.exponential(1.0, n)
    e12 = rng.exponential(1.0 / lam, n)
    z = rng.gamma(beta, 1.0, n)
    x1 = (np.minimum(e1, e12) / z) ** gamma1
    x2 = (np.minimum(e2, e12) / z) ** gamma2
    record = {
        "family": "pareto4",
        "lam": lam,
        "beta": beta,
        "gamma1": gamma1,
        "gamma2": gamma2,
    }
    return SampleBatch(names=("X1", "X2"), columns=(x1, x2), seed=seed, params=record)


def to_copula_scale(batch: SampleBatch, margins) -> SampleBatch:
    """Transform each column through its marginal survival function,
    yielding V_i = survival_i(X_i), uniform on [0, 1] when the margins
    match the generating law.

    margins may be margin objects (anything with a ``survival`` attribute)
    or bare callables, one per column.  Values escaping [0, 1] raise
    MarginMismatchError.
    """
    margins = tuple(margins)
    if len(margins) != batch.dim:
        raise DomainError(f"need {batch.dim} margins, got {len(margins)}")
    transformed = []
    for name, col, margin in zip(batch.names, batch.columns, margins):
        survival = getattr(margin, "survival", margin)
        values = np.asarray(survival(col), dtype=float)
        if values.shape != col.shape:
            values = np.array([float(survival(x)) for x in col])
        if not np.all(np.isfinite(values)) or np.any(values < 0.0) or np.any(values > 1.0):
            raise MarginMismatchError(
                f"column {name} leaves [0, 1] under its margin; "
                "the margins do not match the generating law"
            )
        transformed.append(values)
    names = tuple(f"V{k + 1}" for k in range(batch.dim))
    record = dict(batch.params)
    record["scale"] = "copula"
    return SampleBatch(names=names, columns=tuple(transformed), seed=batch.seed, params=record)


def empirical_tail_function(batch: SampleBatch, matrix, w, u, side: str, target: str):
    """Empirical counterpart of the order-1 tail limits: the frequency of
    the scaled tail event at u, divided by u.

    Returns (estimate, half_width) with half_width = 3*sqrt(p(1-p)/n)/u.
    The batch must already be on copula scale.  Events that are empty by
    construction (a zero threshold for box events, all-zero thresholds for
    union events) return (0.0, 0.0) exactly; otherwise fewer than 20
    observed hits raise TooFewTailPointsError, signaling that u is too
    small for the batch size.
    """
    a = _as_index_matrix(matrix)
    if a.dim != batch.dim:
        raise DomainError(f"matrix dimension {a.dim} does not match batch dimension {batch.dim}")
    u = float(u)
    if not (0.0 < u < 1.0):
        raise DomainError(f"u must lie in (0, 1), got {u!r}")
    if side not in SIDES:
        raise DomainError(f"side must be one of {SIDES}, got {side!r}")
    if target not in TARGETS:
        raise DomainError(f"target must be one of {TARGETS}, got {target!r}")
    vec = np.asarray(w, dtype=float)
    if vec.shape != (a.dim,):
        raise DomainError(f"w must be a vector of length {a.dim}, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)) or np.any(vec < 0.0):
        raise DomainError("w entries must be nonnegative and finite")
    for name, col in zip(batch.names, batch.columns):
        if col.min() < 0.0 or col.max() > 1.0:
            raise DomainError(f"column {name} is not on copula scale")
    if np.all(vec == 0.0):
        return 0.0, 0.0
    v = np.clip(apply_scaling(a, u, vec), 0.0, 1.0)
    if target == "cdf" and np.any(v == 0.0):
        return 0.0, 0.0
    if target == "exponent" and np.all(v == 0.0):
        return 0.0, 0.0
    n = batch.n
    if target == "cdf":
        mask = np.ones(n, dtype=bool)
        for col, vi in zip(batch.columns, v):
            mask &= (col <= vi) if side == "lower" else (col > 1.0 - vi)
    else:
        mask = np.zeros(n, dtype=bool)
        for col, vi in zip(batch.columns, v):
            mask |= (col <= vi) if side == "lower" else (col > 1.0 - vi)
    hits = int(mask.sum())
    if hits < MIN_TAIL_HITS:
        raise TooFewTailPointsError(
            f"only {hits} of {n} samples hit the tail event at u={u!r}; "
            f"need at least {MIN_TAIL_HITS} for a stable ratio"
        )
    p = hits / n
    estimate = p / u
    half_width = 3.0 * math.sqrt(p * (1.0 - p) / n) / u
    return estimate, half_width


def ks_uniform_statistic(values) -> float:
    """Kolmogorov-Smirnov distance of a sample from the uniform law on
    [0, 1]; compare against 1.63/sqrt(n) for a 1% smoke test."""
    sample = np.sort(np.asarray(values, dtype=float))
    if sample.ndim != 1 or sample.size < 1:
        raise DomainError("values must be a nonempty vector")
    if not np.all(np.isfinite(sample)) or sample[0] < 0.0 or sample[-1] > 1.0:
        raise DomainError("values must lie in [0, 1]")
    n = sample.size
    steps = np.arange(1, n + 1) / n
    d_plus = float(np.max(steps - sample))
    d_minus = float(np.max(sample - (steps - 1.0 / n)))
    return max(d_plus, d_minus)


def _checked_count(n) -> int:
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _checked_seed(seed) -> int:
    if int(seed) != seed:
        raise DomainError(f"seed must be an integer, got {seed!r}")
    return int(seed)


def _checked_positive(name: str, value) -> float:
    v = float(value)
    if not math.isfinite(v) or v <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return v
