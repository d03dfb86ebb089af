"""EM / MAP fitting of the Yule-Simon rate parameter.

The complete-data expectation step is available in closed form, so one
iteration is the single update

    lam' = (N + a - 1) / (b + sum_i sum_{j=1..k_i} 1/(lam + j))

with Gamma(a, rate b) prior; a=1, b=0 reduces it to the pure-likelihood
fixed point lam' = N / sum_i [psi(lam+1+k_i) - psi(lam+1)]. Both
denominator forms are identical through the digamma recurrence and both
are exposed via the ``method`` argument.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .distribution import CountSample
from .special import (
    digamma,
    log_gamma,
    pooled_harmonic_sum,
    pooled_harmonic_sum_sq,
)

__all__ = [
    "CONVEXITY_BOUND",
    "FitConfig",
    "FitResult",
    "observed_loglik",
    "q_function",
    "em_step",
    "em_fit",
    "init_lambda",
    "convexity_check",
]

# Radius of the interval on which the per-observation log-likelihood is
# certified concave: second derivative -1/lam^2 + sum 1/(lam+j)^2 stays
# negative while 1/lam^2 exceeds the Basel sum pi^2/6.
CONVEXITY_BOUND = math.sqrt(6.0) / math.pi

CONVERGED = "converged"
MAX_ITER_REACHED = "max_iter_reached"
DIVERGING = "diverging"

INIT_MODE_ONE = "mode_one"
INIT_MOMENTS = "moments"


@dataclass
class FitConfig:
    """EM controls.

    prior_a, prior_b
        Gamma prior shape and rate; the defaults (1, 0) make the MAP
        update coincide bitwise with the maximum-likelihood update.
    tol
        Stop when |lam_{t+1} - lam_t| < tol.
    init
        Starting point: a number fixes lam_0 directly, "mode_one"
        starts at 1.0, "moments" uses kbar/(kbar - 1) and falls back to
        1.0 (with a warning) when the sample mean is not above one.
    divergence_ceiling
        Iterates above this report status "diverging" instead of
        raising; data whose likelihood has no interior maximum (all
        counts equal to one) walk off to infinity.
    """

    prior_a: float = 1.0
    prior_b: float = 0.0
    tol: float = 2e-4
    max_iter: int = 500
    init: float | str = INIT_MODE_ONE
    divergence_ceiling: float = 1e6

    def __post_init__(self):
        if not (self.tol > 0.0):
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.prior_a < 0.0 or self.prior_b < 0.0:
            raise ValueError("prior parameters must be >= 0")
        if self.divergence_ceiling <= 0.0:
            raise ValueError("divergence_ceiling must be positive")
        if isinstance(self.init, str):
            if self.init not in (INIT_MODE_ONE, INIT_MOMENTS, "method_of_moments"):
                raise ValueError(f"unknown init policy {self.init!r}")
        elif not (float(self.init) >= 0.0 and math.isfinite(float(self.init))):
            raise ValueError("fixed init must be a finite value >= 0")


@dataclass
class FitResult:
    """Estimate bundle: trace has one entry per iterate including the
    start, so len(trace) == iterations + 1."""

    lambda_hat: float
    iterations: int
    trace: list[float]
    loglik_trace: list[float]
    status: str

    @property
    def converged(self) -> bool:
        return self.status == CONVERGED


def observed_loglik(data: CountSample, lam: float) -> float:
    """Observed-data log-likelihood sum_i log g(k_i | lam)."""
    lam = float(lam)
    if not (lam > 0.0 and math.isfinite(lam)):
        raise ValueError("lambda must be positive and finite")
    u, c = np.unique(data.counts, return_counts=True)
    n = data.n
    uf = u.astype(np.float64)
    return float(
        n * math.log(lam)
        + n * log_gamma(lam + 1.0)
        + np.sum(c * (log_gamma(uf) - log_gamma(lam + 1.0 + uf)))
    )


def _loglik_or_neg_inf(data: CountSample, lam: float) -> float:
    if lam <= 0.0:
        return -math.inf
    return observed_loglik(data, lam)


def q_function(lam: float, lam_prev: float, data: CountSample) -> float:
    """Expected complete-data log-likelihood given the previous iterate.

    Q(lam | lam') = N lam psi(lam'+1) - lam sum_i psi(lam'+1+k_i)
                    + sum_i (k_i-1)[psi(k_i) - psi(lam'+1+k_i)]
                    + N log lam
    """
    lam = float(lam)
    lam_prev = float(lam_prev)
    if not (lam > 0.0 and lam_prev > 0.0):
        raise ValueError("both lambda arguments must be positive")
    u, c = np.unique(data.counts, return_counts=True)
    uf = u.astype(np.float64)
    n = data.n
    psi_shift = digamma(lam_prev + 1.0 + uf)
    value = n * lam * digamma(lam_prev + 1.0) - lam * np.sum(c * psi_shift)
    value += np.sum(c * (uf - 1.0) * (digamma(uf) - psi_shift))
    return float(value + n * math.log(lam))


def em_step(
    lam_prev: float,
    data: CountSample,
    prior_a: float = 1.0,
    prior_b: float = 0.0,
    method: str = "auto",
) -> float:
    """One EM/MAP update; lam_prev = 0 is a legal start."""
    lam_prev = float(lam_prev)
    if not (lam_prev >= 0.0 and math.isfinite(lam_prev)):
        raise ValueError("lam_prev must be finite and >= 0")
    numerator = data.n + prior_a - 1.0
    if numerator <= 0.0:
        raise ValueError("degenerate update: N + a - 1 must be positive")
    denominator = prior_b + pooled_harmonic_sum(lam_prev, data.counts, method=method)
    return numerator / denominator


def init_lambda(data: CountSample, policy) -> float:
    """Resolve an initialization policy to a starting value."""
    if isinstance(policy, (int, float)) and not isinstance(policy, bool):
        value = float(policy)
        if not (value >= 0.0 and math.isfinite(value)):
            raise ValueError("fixed init must be a finite value >= 0")
        return value
    if policy == INIT_MODE_ONE:
        return 1.0
    if policy in (INIT_MOMENTS, "method_of_moments"):
        kbar = data.sample_mean()
        if kbar <= 1.0:
            warnings.warn(
                "moments init needs a sample mean above 1; falling back to 1.0",
                RuntimeWarning,
                stacklevel=2,
            )
            return 1.0
        return kbar / (kbar - 1.0)
    raise ValueError(f"unknown init policy {policy!r}")


def em_fit(data: CountSample, config: FitConfig | None = None) -> FitResult:
    """Iterate em_step until the parameter change drops below tol.

    Never raises mid-run on degenerate data: samples with every count
    equal to one (and a flat-or-increasing prior) have no interior
    maximum, so the iterates grow without bound and the fit reports
    status "diverging" - immediately when an iterate crosses the
    ceiling, otherwise once the iteration budget is exhausted.
    """
    config = config or FitConfig()
    lam = init_lambda(data, config.init)
    trace = [lam]
    loglik_trace = [_loglik_or_neg_inf(data, lam)]
    # exact no-interior-maximum condition: likelihood factors are
    # strictly increasing in lambda iff every count is 1, and a Gamma
    # prior with b = 0, a >= 1 does not pull the update back down
    degenerate = (
        config.prior_b == 0.0
        and config.prior_a >= 1.0
        and int(data.counts.max()) == 1
    )
    status = MAX_ITER_REACHED
    iterations = 0
    for _ in range(config.max_iter):
        new = em_step(lam, data, config.prior_a, config.prior_b)
        delta = abs(new - lam)
        lam = new
        iterations += 1
        trace.append(lam)
        loglik_trace.append(_loglik_or_neg_inf(data, lam))
        if lam > config.divergence_ceiling:
            status = DIVERGING
            break
        if delta < config.tol:
            status = CONVERGED
            break
    if status == MAX_ITER_REACHED and degenerate:
        status = DIVERGING
    return FitResult(
        lambda_hat=lam,
        iterations=iterations,
        trace=trace,
        loglik_trace=loglik_trace,
        status=status,
    )


def convexity_check(data: CountSample, lam: float) -> tuple[float, bool]:
    """Second derivative of the log-likelihood at lam and whether lam
    lies inside the certified concavity interval (0, sqrt(6)/pi)."""
    lam = float(lam)
    if not (lam > 0.0 and math.isfinite(lam)):
        raise ValueError("lambda must be positive and finite")
    second = -data.n / lam**2 + pooled_harmonic_sum_sq(lam, data.counts)
    return second, lam < CONVEXITY_BOUND
