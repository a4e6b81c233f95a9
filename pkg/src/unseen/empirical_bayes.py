"""Empirical-Bayes fitting of the Pitman-Yor parameters by maximizing the
Ewens-Pitman marginal likelihood of the observed partition."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.special import gammaln

from .errors import DegenerateSampleError, DomainError
from .model import SampleSummary

_FLAGS = ("alpha_zero", "alpha_near_one", "theta_capped")


@dataclass(frozen=True)
class FitResult:
    alpha_hat: float
    theta_hat: float
    log_likelihood: float
    converged: bool
    boundary_flags: frozenset[str]

    def __post_init__(self):
        unknown = self.boundary_flags - set(_FLAGS)
        if unknown:
            raise DomainError(f"unknown boundary flags {sorted(unknown)}")


def _freq_multiset(sample: SampleSummary):
    return np.unique(np.asarray(sample.freqs, dtype=np.int64), return_counts=True)


def _loglik(alpha, theta, n, j, freq_vals, freq_mult):
    if not 0.0 <= alpha < 1.0 or theta <= -alpha:
        return -math.inf
    if j > 1:
        if alpha == 0.0:
            if theta <= 0.0:
                return -math.inf
            s_new = (j - 1) * math.log(theta)
        else:
            terms = theta + alpha * np.arange(1, j)
            if np.any(terms <= 0.0):
                return -math.inf
            s_new = float(np.log(terms).sum())
    else:
        s_new = 0.0
    s_norm = float(gammaln(theta + n) - gammaln(theta + 1.0))
    s_blocks = float((freq_mult * (gammaln(freq_vals - alpha) - gammaln(1.0 - alpha))).sum())
    return s_new - s_norm + s_blocks


def ep_log_likelihood(alpha: float, theta: float, sample: SampleSummary) -> float:
    """Log of the Ewens-Pitman probability of the observed partition.

    Inadmissible interior points return -inf rather than raising, so the
    function can be handed directly to an optimizer.
    """
    fv, fm = _freq_multiset(sample)
    return _loglik(alpha, theta, sample.n, sample.j, fv.astype(float), fm.astype(float))


def _golden_max(f, lo: float, hi: float, iters: int = 80):
    """Golden-section maximum of f on [lo, hi]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - inv_phi * (hi - lo)
    d = lo + inv_phi * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - inv_phi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + inv_phi * (hi - lo)
            fd = f(d)
    x = 0.5 * (lo + hi)
    return x, f(x)


def fit_empirical_bayes(
    sample: SampleSummary,
    alpha_step: float = 0.01,
    theta_bounds: tuple[float, float] = (1e-4, 1e6),
    refine_iters: int = 400,
    allow_negative_theta: bool = False,
) -> FitResult:
    """Maximize the Ewens-Pitman likelihood over admissible (alpha, theta).

    Two stages: a coarse alpha grid with a golden-section theta search on
    the log scale at each grid point, then Nelder-Mead refinement around
    the best grid point.  Boundary solutions are flagged, not rejected.
    """
    if sample.n < 2:
        raise DegenerateSampleError(
            "a single observation is uninformative for (alpha, theta)"
        )
    theta_min, theta_max = theta_bounds
    if not 0.0 < theta_min < theta_max:
        raise DomainError("theta bounds must satisfy 0 < min < max")
    fv, fm = _freq_multiset(sample)
    fv, fm = fv.astype(float), fm.astype(float)
    n, j = sample.n, sample.j

    def ll(alpha, theta):
        return _loglik(alpha, theta, n, j, fv, fm)

    log_lo, log_hi = math.log(theta_min), math.log(theta_max)
    best = (-math.inf, 0.0, theta_min)
    for alpha in np.arange(0.0, 1.0, alpha_step):
        alpha = float(alpha)
        lt, val = _golden_max(lambda lt: ll(alpha, math.exp(lt)), log_lo, log_hi)
        if val > best[0]:
            best = (val, alpha, math.exp(lt))
        if allow_negative_theta and alpha > 0.0:
            # search theta in (-alpha, 0] directly (linear scale)
            t, val = _golden_max(lambda t: ll(alpha, t), -alpha * (1.0 - 1e-9), 0.0)
            if val > best[0]:
                best = (val, alpha, t)

    def neg(x):
        a, lt = x
        return -ll(float(a), math.exp(float(lt)))

    if best[2] > 0:
        x0 = np.array([best[1], math.log(best[2])])
        res = minimize(
            neg, x0, method="Nelder-Mead",
            options={"maxiter": refine_iters, "xatol": 1e-7, "fatol": 1e-10},
        )
        converged = bool(res.success)
        alpha_hat, theta_hat = float(res.x[0]), math.exp(float(res.x[1]))
        alpha_hat = min(max(alpha_hat, 0.0), 1.0 - 1e-12)
        if alpha_hat < 1e-10:
            alpha_hat = 0.0
        theta_hat = min(max(theta_hat, theta_min), theta_max)
    else:
        # negative-theta optimum: keep the grid/golden-section solution
        converged = True
        alpha_hat, theta_hat = best[1], best[2]
    refined = ll(alpha_hat, theta_hat)
    if refined < best[0]:
        alpha_hat, theta_hat, refined = best[1], best[2], best[0]

    flags = set()
    if alpha_hat == 0.0:
        flags.add("alpha_zero")
    if alpha_hat >= 1.0 - alpha_step:
        flags.add("alpha_near_one")
    if theta_hat >= 0.99 * theta_max:
        flags.add("theta_capped")
        converged = False
    if j == n or j == 1:
        # all-singletons pushes theta to the cap; a single block pushes both
        # parameters to their lower boundaries
        converged = False
    return FitResult(
        alpha_hat=alpha_hat,
        theta_hat=theta_hat,
        log_likelihood=refined,
        converged=converged,
        boundary_flags=frozenset(flags),
    )
