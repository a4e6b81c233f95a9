"""Credible-interval assembly for the three families, and the coverage
metric used to compare an approximate interval against the exact one."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import PYParams, SampleSummary
from .samplers import RngStream, sample_k_future, sample_ml_limit

_METHODS = ("exact_mc", "mittag_leffler", "gaussian")


@dataclass(frozen=True)
class CredibleInterval:
    """An equal-tailed credible interval; endpoints are stored unrounded."""

    lo: float
    hi: float
    level: float
    method: str
    mc_samples: int | None = None

    def __post_init__(self):
        if self.method not in _METHODS:
            raise DomainError(f"unknown method {self.method!r}, expected one of {_METHODS}")
        if not 0.0 < self.level < 1.0:
            raise DomainError("level must lie in (0, 1)")
        if self.lo > self.hi:
            raise DomainError(f"interval endpoints out of order: ({self.lo}, {self.hi})")
        if (self.mc_samples is None) != (self.method == "gaussian"):
            raise DomainError("mc_samples must be present exactly when the method is Monte Carlo")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


def _equal_tailed(draws: np.ndarray, level: float) -> tuple[float, float]:
    """Equal-tailed interval from order statistics at ceiling ranks (no
    interpolation, so endpoints are realizable sample values)."""
    r = draws.size
    delta = 1.0 - level
    draws = np.sort(draws)
    lo_rank = max(math.ceil(r * delta / 2.0), 1)
    hi_rank = min(math.ceil(r * (1.0 - delta / 2.0)), r)
    return float(draws[lo_rank - 1]), float(draws[hi_rank - 1])


def exact_interval(
    params: PYParams,
    sample: SampleSummary,
    m: int,
    level: float = 0.95,
    samples: int = 2000,
    rng: RngStream | None = None,
) -> CredibleInterval:
    """Monte Carlo interval from the exact posterior, via the predictive
    Bernoulli chain run over `samples` replicates."""
    if samples < 100:
        raise DomainError("need at least 100 Monte Carlo samples")
    if not 0.0 < level < 1.0:
        raise DomainError("level must lie in (0, 1)")
    if rng is None:
        rng = RngStream(0)
    if m == 0:
        return CredibleInterval(0.0, 0.0, level, "exact_mc", mc_samples=samples)
    draws = sample_k_future(params, sample, m, rng, size=samples)
    lo, hi = _equal_tailed(draws.astype(float), level)
    return CredibleInterval(
        lo=max(0.0, lo), hi=min(float(m), hi), level=level,
        method="exact_mc", mc_samples=samples,
    )


def ml_interval(
    params: PYParams,
    sample: SampleSummary,
    m: int,
    level: float = 0.95,
    samples: int = 2000,
    rng: RngStream | None = None,
) -> CredibleInterval:
    """Monte Carlo interval from the scaled Mittag-Leffler limit law
    (alpha > 0 only)."""
    if samples < 100:
        raise DomainError("need at least 100 Monte Carlo samples")
    if not 0.0 < level < 1.0:
        raise DomainError("level must lie in (0, 1)")
    if rng is None:
        rng = RngStream(0)
    draws = sample_ml_limit(params, sample, m, rng, size=samples)
    lo, hi = _equal_tailed(np.asarray(draws, dtype=float), level)
    return CredibleInterval(
        lo=max(0.0, lo), hi=min(float(m), hi), level=level,
        method="mittag_leffler", mc_samples=samples,
    )


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def coverage(approx: CredibleInterval, exact: CredibleInterval) -> float:
    """Percentage of the integer-rounded exact interval's length covered by
    the integer-rounded approximate interval."""
    if abs(approx.level - exact.level) > 1e-12:
        raise DomainError("intervals must share the same credibility level")
    a_lo, a_hi = _round_half_up(approx.lo), _round_half_up(approx.hi)
    e_lo, e_hi = _round_half_up(exact.lo), _round_half_up(exact.hi)
    if e_hi == e_lo:
        return 100.0 if a_lo <= e_lo <= a_hi else 0.0
    inter = min(a_hi, e_hi) - max(a_lo, e_lo)
    return 100.0 * max(inter, 0) / (e_hi - e_lo)
