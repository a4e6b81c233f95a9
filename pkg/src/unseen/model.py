"""Pitman-Yor posterior quantities for the unseen-species count.

Given a sample of n observations containing j distinct species, the
posterior law of the number of new species among m further draws depends
on the data only through (n, j).  Two independent evaluations of that law
are provided: an O(m^2) forward recursion over the predictive chain
(production path, stable for m into the thousands) and the closed form in
terms of generalized factorial coefficients (small-m validation path).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import digamma, gammaln

from .combinatorics import (
    DEFAULT_U_MAX,
    GfcTable,
    log_rising_factorial,
    stirling_noncentral,
)
from .errors import DomainError, NumericalIntegrityError, SizeLimitError

DEFAULT_DP_MAX = 20000

_NEG_CLAMP = -1e-12


@dataclass(frozen=True)
class PYParams:
    """Pitman-Yor parameter pair; alpha = 0 is the Dirichlet prior."""

    alpha: float
    theta: float

    def __post_init__(self):
        if not (0.0 <= self.alpha < 1.0):
            raise DomainError(f"alpha must lie in [0, 1), got {self.alpha}")
        if not self.theta > -self.alpha:
            raise DomainError(
                f"theta must exceed -alpha, got theta={self.theta}, alpha={self.alpha}"
            )

    @property
    def is_dirichlet(self) -> bool:
        return self.alpha == 0.0


@dataclass(frozen=True)
class SampleSummary:
    """Observed sample statistics: size n, distinct species j, frequencies."""

    n: int
    j: int
    freqs: tuple[int, ...]

    def __post_init__(self):
        freqs = tuple(int(f) for f in self.freqs)
        object.__setattr__(self, "freqs", freqs)
        if self.n < 1 or self.j < 1 or self.j > self.n:
            raise DomainError(f"need 1 <= j <= n, got n={self.n}, j={self.j}")
        if len(freqs) != self.j:
            raise DomainError(f"freqs has {len(freqs)} entries, expected j={self.j}")
        if any(f < 1 for f in freqs):
            raise DomainError("all frequencies must be >= 1")
        if sum(freqs) != self.n:
            raise DomainError(f"frequencies sum to {sum(freqs)}, expected n={self.n}")

    @classmethod
    def from_freqs(cls, freqs) -> "SampleSummary":
        freqs = tuple(sorted((int(f) for f in freqs), reverse=True))
        return cls(n=sum(freqs), j=len(freqs), freqs=freqs)


@dataclass(frozen=True)
class Pmf:
    """Probability mass function on {0, ..., support_max}."""

    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "probs", probs)
        if probs.ndim != 1 or probs.size == 0:
            raise DomainError("probs must be a nonempty 1-d vector")
        if np.any(probs < 0):
            raise DomainError("probabilities must be nonnegative")
        if abs(probs.sum() - 1.0) > 1e-10:
            raise NumericalIntegrityError(
                f"pmf sums to {probs.sum():.15f}, expected 1 within 1e-10"
            )

    @property
    def support_max(self) -> int:
        return self.probs.size - 1

    def mean(self) -> float:
        return float(np.arange(self.probs.size) @ self.probs)

    def variance(self) -> float:
        k = np.arange(self.probs.size)
        mu = self.mean()
        return float(((k - mu) ** 2) @ self.probs)

    def cdf(self) -> np.ndarray:
        return np.cumsum(self.probs)

    def quantile(self, p: float) -> int:
        """Smallest k with Pr[K <= k] >= p."""
        if not 0.0 < p <= 1.0:
            raise DomainError("quantile level must lie in (0, 1]")
        return int(np.searchsorted(self.cdf(), p))


def predictive_new_prob(
    params: PYParams, n_current: int, k_current: int, offset: int = 0
) -> float:
    """Probability that the next draw founds a new species:
    (theta + alpha * k) / (theta + n + offset)."""
    denom = params.theta + n_current + offset
    if denom <= 0:
        raise DomainError(f"predictive denominator must be positive, got {denom}")
    p = (params.theta + params.alpha * k_current) / denom
    return min(max(p, 0.0), 1.0)


def posterior_mean(params: PYParams, sample: SampleSummary, m: int) -> float:
    """Posterior expected number of new species in m additional draws."""
    if m < 0:
        raise DomainError("m must be >= 0")
    if m == 0:
        return 0.0
    a, t, n, j = params.alpha, params.theta, sample.n, sample.j
    if a == 0.0:
        return float(t * (digamma(t + n + m) - digamma(t + n)))
    log_ratio = log_rising_factorial(t + n + a, m) - log_rising_factorial(t + n, m)
    return float((j + t / a) * np.expm1(log_ratio))


def posterior_pmf_dp(
    params: PYParams, sample: SampleSummary, m: int, dp_max: int = DEFAULT_DP_MAX
) -> Pmf:
    """Exact posterior pmf of the new-species count by forward recursion
    over the predictive chain; O(m^2) time, O(m) memory."""
    if m < 0:
        raise DomainError("m must be >= 0")
    if m > dp_max:
        raise SizeLimitError(f"m={m} exceeds dp_max={dp_max}")
    a, t, n, j = params.alpha, params.theta, sample.n, sample.j
    probs = np.zeros(m + 1)
    probs[0] = 1.0
    k = np.arange(m + 1, dtype=float)
    p_new_numer = np.clip(t + a * (j + k), 0.0, None)
    for i in range(m):
        p = p_new_numer / (t + n + i)
        np.clip(p, 0.0, 1.0, out=p)
        stay = probs * (1.0 - p)
        stay[1:] += (probs * p)[:-1]
        probs = stay
    return Pmf(probs / probs.sum())


def _closed_log_weights_py(params: PYParams, sample: SampleSummary, m: int):
    """Unnormalized signed log weights of the closed-form pmf, alpha > 0."""
    a, t, n, j = params.alpha, params.theta, sample.n, sample.j
    table = GfcTable(m, a, -n + j * a)
    signs, logs = table.log_row(m)
    base = j + t / a
    k = np.arange(m + 1)
    if base <= 0:
        # theta + j*alpha = 0: rising factorial vanishes for k >= 1
        lr = np.where(k == 0, 0.0, -np.inf)
    else:
        lr = gammaln(base + k) - gammaln(base)
    return signs, lr + logs


def posterior_pmf_closed(
    params: PYParams, sample: SampleSummary, m: int, u_max: int = DEFAULT_U_MAX
) -> Pmf:
    """Posterior pmf from the closed form: generalized factorial
    coefficients for alpha > 0, non-central Stirling numbers at alpha = 0."""
    if m < 0:
        raise DomainError("m must be >= 0")
    if m > u_max:
        raise SizeLimitError(f"m={m} exceeds u_max={u_max}")
    if m == 0:
        return Pmf(np.ones(1))
    a, t, n = params.alpha, params.theta, sample.n
    if a == 0.0:
        k = np.arange(m + 1)
        log_s = np.array(
            [
                v.log_abs if v.sign > 0 else -np.inf
                for v in (stirling_noncentral(m, int(kk), float(n), u_max=u_max) for kk in k)
            ]
        )
        log_w = k * np.log(t) + log_s
        signs = np.ones(m + 1, dtype=np.int8)
    else:
        signs, log_w = _closed_log_weights_py(params, sample, m)
    log_norm = log_rising_factorial(t + n, m)
    with np.errstate(over="ignore"):
        probs = np.where(signs == 0, 0.0, signs * np.exp(log_w - log_norm))
    if np.any(probs < _NEG_CLAMP):
        raise NumericalIntegrityError(
            f"closed-form pmf produced probability {probs.min():.3e} < {_NEG_CLAMP}"
        )
    probs = np.clip(probs, 0.0, None)
    return Pmf(probs / probs.sum())
