"""Zero-temperature limit laws in one dimension: densities, CDFs, samplers, moments.

Three regimes of the scalar objective |x| + (x - y)^2 / (2 t) arise as the
temperature goes to zero, split by u = y / t:

  interior (0 <= u < 1): states shrink like T; the rescaled law is a two-sided
      exponential tilted by u.
  boundary (y = t): positive states shrink like sqrt(T) toward |N(0, t)|, the
      negative ones like T toward -Exponential(2) and carry vanishing mass.
  exterior (y > t): states concentrate at y - t with Gaussian N(0, t)
      fluctuations of size sqrt(T).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

__all__ = [
    "LimitLaw1D",
    "interior_density",
    "interior_cdf",
    "sample_interior",
    "interior_mean",
    "interior_second_moment",
    "boundary_law",
    "exterior_law",
    "ks_statistic",
]


def _check_u(u):
    arr = np.asarray(u, dtype=float)
    if np.any(arr < 0.0) or np.any(arr >= 1.0):
        raise ValueError("u must lie in [0, 1)")
    return arr


def interior_density(u: float, x):
    """Density (1 - u^2)/2 * exp(-|x| (1 - sgn(x) u)) of the interior law."""
    u = float(_check_u(u))
    arr = np.asarray(x, dtype=float)
    out = 0.5 * (1.0 - u * u) * np.exp(-np.abs(arr) * (1.0 - np.sign(arr) * u))
    return float(out) if np.ndim(x) == 0 else out


def interior_cdf(u: float, x):
    """Closed-form CDF of the interior law.

    The law is a mixture: weight (1-u)/2 on -Exponential(1+u) and weight
    (1+u)/2 on +Exponential(1-u), so

        F(x) = (1-u)/2 * exp((1+u) x)            for x < 0,
        F(x) = 1 - (1+u)/2 * exp(-(1-u) x)       for x >= 0,

    continuous at zero with value (1-u)/2.
    """
    u = float(_check_u(u))
    arr = np.asarray(x, dtype=float)
    neg = 0.5 * (1.0 - u) * np.exp((1.0 + u) * np.minimum(arr, 0.0))
    pos = 1.0 - 0.5 * (1.0 + u) * np.exp(-(1.0 - u) * np.maximum(arr, 0.0))
    out = np.where(arr < 0.0, neg, pos)
    return float(out) if np.ndim(x) == 0 else out


def sample_interior(u: float, rng: np.random.Generator, size=None):
    """Draw from the interior law: mixture sign, exponential magnitude."""
    u = float(_check_u(u))
    take_pos = rng.random(size) < 0.5 * (1.0 + u)
    mag = rng.exponential(1.0, size)
    out = np.where(take_pos, mag / (1.0 - u), -mag / (1.0 + u))
    return float(out) if size is None else out


def interior_mean(u):
    """First moment 2u / (1 - u^2) of the interior law (0 at u = 0)."""
    arr = _check_u(u)
    out = 2.0 * arr / (1.0 - arr * arr)
    return float(out) if np.ndim(u) == 0 else out


def interior_second_moment(u):
    """Second moment (1-u)/(1+u)^2 + (1+u)/(1-u)^2 of the interior law."""
    arr = _check_u(u)
    out = (1.0 - arr) / (1.0 + arr) ** 2 + (1.0 + arr) / (1.0 - arr) ** 2
    return float(out) if np.ndim(u) == 0 else out


def boundary_law(t: float, branch: str, rng: np.random.Generator, size=None):
    """Sample one branch of the boundary limit at y = t.

    branch="negative": -Exponential(rate 2), the conditional limit of the
    negative part under the fast scaling.  branch="positive": |N(0, t)|, the
    conditional limit of the positive part under the square-root scaling (and
    the unconditional limit, since the negative branch loses all mass).
    """
    if not t > 0.0:
        raise ValueError("t must be positive")
    if branch == "negative":
        out = -rng.exponential(0.5, size)
    elif branch == "positive":
        out = np.abs(rng.normal(0.0, math.sqrt(t), size))
    else:
        raise ValueError("branch must be 'negative' or 'positive'")
    return float(out) if size is None else out


def exterior_law(t: float, rng: np.random.Generator, size=None):
    """Sample N(0, t), the centred Gaussian limit beyond the threshold."""
    if not t > 0.0:
        raise ValueError("t must be positive")
    out = rng.normal(0.0, math.sqrt(t), size)
    return float(out) if size is None else out


def ks_statistic(samples, cdf) -> float:
    """Sup distance between the empirical CDF of the samples and a reference CDF."""
    s = np.sort(np.asarray(samples, dtype=float).reshape(-1))
    n = s.size
    if n == 0:
        raise ValueError("need at least one sample")
    f = np.asarray(cdf(s), dtype=float)
    upper = np.arange(1, n + 1) / n
    lower = np.arange(0, n) / n
    return float(max(np.max(upper - f), np.max(f - lower)))


@dataclass(frozen=True)
class LimitLaw1D:
    """Closed-form zero-temperature law for one regime.

    regime "interior" needs u = y/t in [0, 1); "boundary" and "exterior" need
    t > 0.  The boundary law exposed here is the positive branch |N(0, t)|;
    the negative branch is reachable through boundary_law directly.
    """

    regime: str
    u: float | None = None
    t: float | None = None

    def __post_init__(self) -> None:
        if self.regime == "interior":
            if self.u is None:
                raise ValueError("interior law needs u")
            _check_u(self.u)
        elif self.regime in ("boundary", "exterior"):
            if self.t is None or not self.t > 0.0:
                raise ValueError(f"{self.regime} law needs t > 0")
        else:
            raise ValueError(f"unknown regime {self.regime!r}")

    def density(self, x):
        if self.regime == "interior":
            return interior_density(self.u, x)
        arr = np.asarray(x, dtype=float)
        if self.regime == "boundary":
            out = np.where(
                arr < 0.0,
                0.0,
                math.sqrt(2.0 / (math.pi * self.t)) * np.exp(-arr * arr / (2.0 * self.t)),
            )
        else:
            out = np.exp(-arr * arr / (2.0 * self.t)) / math.sqrt(2.0 * math.pi * self.t)
        return float(out) if np.ndim(x) == 0 else out

    def cdf(self, x):
        if self.regime == "interior":
            return interior_cdf(self.u, x)
        arr = np.asarray(x, dtype=float)
        if self.regime == "boundary":
            out = np.where(arr < 0.0, 0.0, special.erf(np.maximum(arr, 0.0) / math.sqrt(2.0 * self.t)))
        else:
            out = special.ndtr(arr / math.sqrt(self.t))
        return float(out) if np.ndim(x) == 0 else out

    def sample(self, rng: np.random.Generator, size=None):
        if self.regime == "interior":
            return sample_interior(self.u, rng, size)
        if self.regime == "boundary":
            return boundary_law(self.t, "positive", rng, size)
        return exterior_law(self.t, rng, size)

    def mean(self) -> float:
        if self.regime == "interior":
            return interior_mean(self.u)
        if self.regime == "boundary":
            return math.sqrt(2.0 * self.t / math.pi)
        return 0.0

    def second_moment(self) -> float:
        if self.regime == "interior":
            return interior_second_moment(self.u)
        return self.t
