"""The Yule-Simon probability model.

Counts k take values 1, 2, ... with mass g(k | lam) = lam * B(lam+1, k).
The model has an exact mixture representation

    w ~ Exponential(lam),  p = exp(-w),  k ~ Geometric(p) on {1, 2, ...}

whose marginal over p recovers g, and the conditional of the latent
success probability given an observation is p | k, lam ~ Beta(lam+1, k).
This module provides the mass function, moments, both data generators
(mixture and preferential-attachment urn) and the latent conditional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .special import log_beta

__all__ = [
    "RngStream",
    "CountSample",
    "LatentDraws",
    "CountFileError",
    "log_pmf",
    "pmf",
    "mean",
    "sample_mixture",
    "sample_urn",
    "latent_posterior_params",
    "read_count_file",
    "write_count_file",
]

# ceil() of the geometric inversion is clipped here before the cast to
# int64; beyond this the count is unrepresentable anyway
_MAX_COUNT = 2**62


@dataclass(frozen=True)
class RngStream:
    """Reproducible random stream: identical (seed, stream_id) replays
    the same draws, distinct stream_ids are statistically independent.

    child() derives nested independent streams (one per replication,
    one per sampler) without coordination.
    """

    seed: int
    stream_id: int = 0
    subkeys: tuple[int, ...] = field(default=())

    def generator(self) -> np.random.Generator:
        key = (self.stream_id, *self.subkeys)
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=key))

    def child(self, *keys: int) -> "RngStream":
        return RngStream(self.seed, self.stream_id, self.subkeys + keys)

    def with_stream(self, stream_id: int) -> "RngStream":
        return RngStream(self.seed, stream_id)


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError("rng must be an RngStream or numpy Generator")


class CountSample:
    """Ordered collection of observed counts, every entry an integer >= 1."""

    __slots__ = ("counts",)

    def __init__(self, counts):
        arr = np.asarray(counts)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("counts must be a nonempty 1-d sequence")
        if not np.issubdtype(arr.dtype, np.integer):
            as_int = np.asarray(arr, dtype=np.int64)
            if not np.array_equal(as_int, arr):
                raise ValueError("counts must be integers")
            arr = as_int
        else:
            arr = arr.astype(np.int64, copy=True)
        if arr.min() < 1:
            raise ValueError("every count must be >= 1")
        self.counts = arr

    @property
    def n(self) -> int:
        return int(self.counts.size)

    def __len__(self) -> int:
        return self.counts.size

    def __eq__(self, other) -> bool:
        return isinstance(other, CountSample) and np.array_equal(self.counts, other.counts)

    def __repr__(self) -> str:
        return f"CountSample(n={self.n}, total={int(self.counts.sum())})"

    def total(self) -> int:
        return int(self.counts.sum())

    def sample_mean(self) -> float:
        return float(self.counts.mean())


@dataclass(frozen=True)
class LatentDraws:
    """Latent variables of the mixture sampler, one entry per count:
    w exponential, p = exp(-w) the geometric success probability."""

    w: np.ndarray
    p: np.ndarray
    k: np.ndarray

    def __len__(self) -> int:
        return self.w.size


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not (lam > 0.0 and math.isfinite(lam)):
        raise ValueError("lambda must be positive and finite")
    return lam


def log_pmf(k, lam: float):
    """log g(k | lam) = log(lam) + log B(lam+1, k) for integer k >= 1."""
    lam = _check_lambda(lam)
    arr = np.asarray(k)
    scalar = arr.ndim == 0
    if not np.issubdtype(arr.dtype, np.integer):
        rounded = np.rint(arr)
        if not np.array_equal(rounded, arr):
            raise ValueError("k must be integer")
        arr = rounded
    if np.any(arr < 1):
        raise ValueError("k must be >= 1")
    out = math.log(lam) + log_beta(lam + 1.0, np.asarray(arr, dtype=np.float64))
    return float(out) if scalar else out


def pmf(k, lam: float):
    """g(k | lam) = lam * B(lam+1, k)."""
    return np.exp(log_pmf(k, lam))


def mean(lam: float) -> float:
    """lam/(lam-1) for lam > 1; the mean is infinite otherwise."""
    lam = _check_lambda(lam)
    if lam <= 1.0:
        return math.inf
    return lam / (lam - 1.0)


def sample_mixture(lam: float, n: int, rng) -> tuple[CountSample, LatentDraws]:
    """Draw n counts through the exponential/geometric mixture.

    p is drawn as a Beta(lam, 1) variate by inverse CDF (U**(1/lam),
    computed in log space), w = -log p, and k by geometric inversion
    k = ceil(log(U') / log(1-p)), which avoids trial-by-trial Bernoulli
    loops on heavy-tailed draws. The latents are returned alongside the
    counts so tests can check the hierarchy directly.
    """
    lam = _check_lambda(lam)
    if n < 1:
        raise ValueError("n must be >= 1")
    g = _as_generator(rng)
    log_p = np.log1p(-g.random(n)) / lam
    p = np.exp(log_p)
    w = -log_p
    log_u = np.log1p(-g.random(n))
    with np.errstate(divide="ignore"):
        raw = np.ceil(log_u / np.log1p(-p))
    k = np.minimum(np.maximum(raw, 1.0), float(_MAX_COUNT)).astype(np.int64)
    return CountSample(k), LatentDraws(w=w, p=p, k=k)


def sample_urn(lam: float, total_items: int, rng) -> CountSample:
    """Simon preferential-attachment process returning category counts.

    Each arrival starts a new category with the innovation probability
    1 - 1/lam, otherwise joins an existing category with probability
    proportional to its current size (realised by copying the category
    of a uniformly chosen earlier arrival). The classical result for
    this process makes the stationary size distribution Yule-Simon with
    parameter lam, which is why lam <= 1 is rejected: the innovation
    probability would leave (0, 1).
    """
    lam = float(lam)
    if not (lam > 1.0 and math.isfinite(lam)):
        raise ValueError("the urn generator requires lambda > 1")
    if total_items < 1:
        raise ValueError("total_items must be >= 1")
    g = _as_generator(rng)
    alpha = 1.0 - 1.0 / lam
    innovate = g.random(total_items) < alpha
    pick = g.random(total_items)
    category = np.empty(total_items, dtype=np.int64)
    n_cat = 0
    for t in range(total_items):
        if t == 0 or innovate[t]:
            category[t] = n_cat
            n_cat += 1
        else:
            category[t] = category[int(pick[t] * t)]
    return CountSample(np.bincount(category))


def latent_posterior_params(k: int, lam: float) -> tuple[float, float]:
    """Parameters of p | k, lam ~ Beta(lam+1, k)."""
    lam = _check_lambda(lam)
    if k < 1 or int(k) != k:
        raise ValueError("k must be an integer >= 1")
    return lam + 1.0, float(k)


class CountFileError(ValueError):
    """Malformed count-sample file (non-integer or < 1 entry)."""


def read_count_file(path) -> CountSample:
    """Read the one-integer-per-line count format; errors name the
    offending line number."""
    counts = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                value = int(text)
            except ValueError:
                raise CountFileError(f"line {lineno}: not an integer: {text!r}") from None
            if value < 1:
                raise CountFileError(f"line {lineno}: counts must be >= 1, got {value}")
            counts.append(value)
    if not counts:
        raise CountFileError("count file holds no counts")
    return CountSample(np.array(counts, dtype=np.int64))


def write_count_file(path, sample: CountSample) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.writelines(f"{int(k)}\n" for k in sample.counts)
