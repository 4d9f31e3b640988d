"""Distribution of sigmoid inflection points and slope angles.

For weights and biases drawn independently from ``U(-u, u)`` the 1-D
inflection point ``chi = -b / a`` has the density ``1/4`` on ``|chi| < 1``
and ``1 / (4 chi**2)`` outside, whatever ``u`` is. The Monte Carlo helpers
here check that law and its multivariate analogue (how often the 0.5 level
set of a random sigmoid crosses the unit hypercube).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .datagen import Hypercube
from .network import intersects_many
from .paramgen import weight_to_angle

_CHUNK = 200_000


@dataclass(frozen=True)
class McEstimate:
    value: float
    stderr: float
    samples: int
    seed: int | None

    def __post_init__(self):
        if self.stderr < 0 or self.samples < 1:
            raise ValueError("stderr must be >= 0 and samples >= 1")


def chi_pdf(chi):
    chi = np.asarray(chi, dtype=float)
    a = np.abs(chi)
    out = np.where(a < 1.0, 0.25, 0.25 / np.maximum(a, 1.0) ** 2)
    return float(out) if out.ndim == 0 else out


def chi_cdf(chi):
    chi = np.asarray(chi, dtype=float)
    safe = np.where(np.abs(chi) < 1.0, 1.0, np.abs(chi))
    out = np.where(
        chi <= -1.0,
        0.25 / safe,
        np.where(chi < 1.0, 0.5 + chi / 4.0, 1.0 - 0.25 / safe),
    )
    return float(out) if out.ndim == 0 else out


def _chunks(samples: int, seed):
    """Yield (size, generator) pairs; each chunk owns an independent substream."""
    n_chunks = max(1, -(-samples // _CHUNK))
    streams = np.random.SeedSequence(seed).spawn(n_chunks)
    for k, ss in enumerate(streams):
        size = min(_CHUNK, samples - k * _CHUNK)
        yield size, np.random.default_rng(ss)


def sample_chi(u: float, samples: int, seed=None, bias_nonnegative: bool = False) -> np.ndarray:
    """Inflection points ``-b/a`` of ``samples`` random 1-D sigmoids.

    Draws with ``a == 0`` (probability zero) are dropped.
    """
    out = []
    for size, rng in _chunks(samples, seed):
        a = rng.uniform(-u, u, size)
        b = rng.uniform(0.0 if bias_nonnegative else -u, u, size)
        keep = a != 0
        out.append(-b[keep] / a[keep])
    return np.concatenate(out)


def prob_inflection_in_box(n: int, u: float = 1.0, samples: int = 1_000_000,
                           seed=None) -> McEstimate:
    """Fraction of SM sigmoids in ``n`` inputs whose 0.5 level set meets ``[0, 1]^n``."""
    if n < 1 or samples < 1:
        raise ValueError("need n >= 1 and samples >= 1")
    box = Hypercube.unit(n)
    hits = 0
    for size, rng in _chunks(samples, seed):
        A = rng.uniform(-u, u, (size, n))
        b = rng.uniform(-u, u, size)
        hits += int(intersects_many(A, b, box).sum())
    p = hits / samples
    return McEstimate(p, float(np.sqrt(p * (1 - p) / samples)), samples, seed)


@dataclass(frozen=True)
class AngleHistogram:
    bin_edges: np.ndarray
    density: np.ndarray
    max_abs_angle: float
    threshold: float
    fraction_above: float  # share of samples with |alpha| > threshold

    @property
    def bin_centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])


def angle_histogram(angles, threshold: float = 80.0) -> AngleHistogram:
    angles = np.asarray(angles, dtype=float)
    edges = np.arange(-90.0, 91.0, 1.0)
    density, _ = np.histogram(angles, bins=edges, density=True)
    abs_a = np.abs(angles)
    return AngleHistogram(edges, density, float(abs_a.max()), threshold,
                          float(np.mean(abs_a > threshold)))


def angle_distribution(u: float, samples: int = 1_000_000, seed=None,
                       threshold: float = 80.0) -> AngleHistogram:
    """Slope angles ``arctan(a/4)`` of SM weights ``a ~ U(-u, u)``, in 1 degree bins."""
    if not u > 0:
        raise ValueError("u must be positive")
    angles = np.concatenate([weight_to_angle(rng.uniform(-u, u, size))
                             for size, rng in _chunks(samples, seed)])
    return angle_histogram(angles, threshold)


def ks_statistic(samples, cdf) -> float:
    """Two-sided Kolmogorov-Smirnov distance between ``samples`` and ``cdf``."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n == 0:
        raise ValueError("ks_statistic needs at least one sample")
    F = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))
