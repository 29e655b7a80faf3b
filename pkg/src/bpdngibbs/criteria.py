"""Proposal-selection criteria: bias and mean-square discrepancy against the limit law.

Each criterion runs Metropolis chains at a fixed temperature and scores a
proposal variance by how far the chain's empirical moments land from the
moments the limit law predicts.  Below the threshold the data value is
averaged over a Beta design, above it over a Pareto design; at the threshold
a single chain at y = t is scored directly.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .limits import interior_mean, interior_second_moment
from .model import NumericalError
from .sampling import mh_chain_batch_1d

__all__ = [
    "DegenerateChainError",
    "ProposalFamily",
    "DesignDistribution",
    "CriterionRow",
    "CriterionReport",
    "bias_criterion_interior",
    "msq_criterion_interior",
    "bias_criterion_boundary",
    "msq_criterion_boundary",
    "bias_criterion_exterior",
    "msq_criterion_exterior",
    "criterion_values",
    "rank_proposals",
]

_REGIMES = ("interior", "boundary", "exterior")


class DegenerateChainError(NumericalError):
    """A chain produced no usable samples for the requested statistic."""


@dataclass(frozen=True)
class ProposalFamily:
    """The candidate proposal variances under comparison."""

    variances: tuple

    def __post_init__(self) -> None:
        var = tuple(float(v) for v in np.atleast_1d(np.asarray(self.variances, dtype=float)))
        if not var:
            raise ValueError("need at least one proposal variance")
        if any(v <= 0.0 for v in var):
            raise ValueError("proposal variances must be positive")
        if len(set(var)) != len(var):
            raise ValueError("proposal variances must be distinct")
        object.__setattr__(self, "variances", var)


@dataclass(frozen=True)
class DesignDistribution:
    """Distribution of data values a criterion averages over.

    kind "beta" lives on (0, 1) and is scaled by t at the call site; kind
    "pareto" lives on [scale, inf).  Shapes with a closed-form inverse CDF
    sample through plain uniforms, so paired runs reuse the draws exactly.
    """

    kind: str
    alpha: float = 1.0
    beta: float = 3.0
    scale: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in ("beta", "pareto"):
            raise ValueError("kind must be 'beta' or 'pareto'")
        if self.alpha <= 0.0 or self.beta <= 0.0 or self.scale <= 0.0:
            raise ValueError("design parameters must be positive")

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.kind == "beta":
            if self.alpha == 1.0:
                return 1.0 - (1.0 - rng.random(size)) ** (1.0 / self.beta)
            return rng.beta(self.alpha, self.beta, size)
        return self.scale * rng.random(size) ** (-1.0 / self.alpha)


@dataclass(frozen=True)
class CriterionRow:
    sigma2: float
    bias_value: float
    msq_value: float

    @property
    def combined(self) -> float:
        return self.bias_value + self.msq_value


@dataclass(frozen=True)
class CriterionReport:
    """Per-variance criterion values for one regime, plus the winner."""

    regime: str
    rows: tuple
    best_sigma2: float
    params: dict = field(default_factory=dict)


def _default_runner(t, ys, temperature, sigma2, chain_length, seed):
    return mh_chain_batch_1d(t, ys, temperature, sigma2, chain_length, seed).states


def _interior_values(t, temperature, sigma2, chain_length, n_designs, seed, design, runner):
    rng = np.random.default_rng(seed)
    design = design or DesignDistribution("beta", alpha=1.0, beta=3.0)
    u = design.sample(rng, n_designs)
    states = runner(t, t * u, temperature, sigma2, chain_length, seed)
    means = states.mean(axis=0)
    seconds = (states * states).mean(axis=0)
    bias_val = float(np.abs(means - temperature * interior_mean(u)).mean())
    msq_val = float(np.abs(seconds - temperature**2 * interior_second_moment(u)).mean())
    return bias_val, msq_val


def _boundary_values(t, temperature, sigma2, chain_length, seed, runner, n_chains=1):
    """Boundary criteria, averaged over replicate chains at y = t.

    Each replicate scores |positive-part mean - sqrt(2Tt/pi)| and
    |second moment - Tt| on its own chain; with several replicates the two
    scores are averaged, which is what makes the ranking repeatable.
    """
    states = runner(t, np.full(n_chains, float(t)), temperature, sigma2, chain_length, seed)
    target = math.sqrt(2.0 * temperature * t / math.pi)
    bias_vals = np.empty(n_chains)
    for i in range(n_chains):
        s = states[:, i]
        pos = s[s > 0.0]
        if pos.size == 0:
            raise DegenerateChainError(f"boundary chain {i} produced no positive samples")
        bias_vals[i] = abs(float(pos.mean()) - target)
    msq_vals = np.abs((states * states).mean(axis=0) - temperature * t)
    return float(bias_vals.mean()), float(msq_vals.mean())


def _exterior_values(t, temperature, sigma2, chain_length, n_designs, seed, design, runner):
    rng = np.random.default_rng(seed)
    design = design or DesignDistribution("pareto", alpha=3.0, scale=t)
    ys = design.sample(rng, n_designs)
    states = runner(t, ys, temperature, sigma2, chain_length, seed)
    centred = states - (ys - t)
    bias_val = float(np.abs(centred.mean(axis=0)).mean())
    msq_val = float(np.abs((centred * centred).mean(axis=0) - temperature * t).mean())
    return bias_val, msq_val


def bias_criterion_interior(t, temperature, sigma2, chain_length, n_designs, seed,
                            *, design=None, chain_runner=None) -> float:
    """Average |chain mean - T m1(u)| over Beta-distributed u, y = t u."""
    runner = chain_runner or _default_runner
    return _interior_values(t, temperature, sigma2, chain_length, n_designs, seed, design, runner)[0]


def msq_criterion_interior(t, temperature, sigma2, chain_length, n_designs, seed,
                           *, design=None, chain_runner=None) -> float:
    """Average |chain second moment - T^2 m2(u)| over Beta-distributed u."""
    runner = chain_runner or _default_runner
    return _interior_values(t, temperature, sigma2, chain_length, n_designs, seed, design, runner)[1]


def bias_criterion_boundary(t, temperature, sigma2, chain_length, seed,
                            *, chain_runner=None) -> float:
    """|mean of the strictly positive chain values - sqrt(2 T t / pi)| at y = t."""
    runner = chain_runner or _default_runner
    return _boundary_values(t, temperature, sigma2, chain_length, seed, runner)[0]


def msq_criterion_boundary(t, temperature, sigma2, chain_length, seed,
                           *, chain_runner=None) -> float:
    """|chain second moment - T t| at y = t."""
    runner = chain_runner or _default_runner
    return _boundary_values(t, temperature, sigma2, chain_length, seed, runner)[1]


def bias_criterion_exterior(t, temperature, sigma2, chain_length, n_designs, seed,
                            *, design=None, chain_runner=None) -> float:
    """Average |centred chain mean| over Pareto-distributed data values."""
    runner = chain_runner or _default_runner
    return _exterior_values(t, temperature, sigma2, chain_length, n_designs, seed, design, runner)[0]


def msq_criterion_exterior(t, temperature, sigma2, chain_length, n_designs, seed,
                           *, design=None, chain_runner=None) -> float:
    """Average |centred chain second moment - T t| over Pareto data values."""
    runner = chain_runner or _default_runner
    return _exterior_values(t, temperature, sigma2, chain_length, n_designs, seed, design, runner)[1]


def criterion_values(regime, sigma2, *, t, temperature, chain_length, n_designs=600,
                     seed=0, design=None, chain_runner=None):
    """Both criterion values for one proposal variance, from a single run."""
    if regime not in _REGIMES:
        raise ValueError(f"regime must be one of {_REGIMES}")
    runner = chain_runner or _default_runner
    if regime == "interior":
        return _interior_values(t, temperature, sigma2, chain_length, n_designs, seed, design, runner)
    if regime == "boundary":
        return _boundary_values(t, temperature, sigma2, chain_length, seed, runner, n_chains=n_designs)
    return _exterior_values(t, temperature, sigma2, chain_length, n_designs, seed, design, runner)


def rank_proposals(family: ProposalFamily, regime: str, *, t=1.0, temperature=0.1,
                   chain_length=5000, n_designs=600, seed=0, design=None,
                   chain_runner=None, n_threads=1) -> CriterionReport:
    """Score every variance in the family and pick the combined-criterion winner.

    All variances share the same seed, so the design draws are paired and the
    chains reuse one underlying set of standard normals.  Ties break toward
    the smaller variance.
    """
    if regime not in _REGIMES:
        raise ValueError(f"regime must be one of {_REGIMES}")

    def one(s2):
        b, m = criterion_values(
            regime, s2, t=t, temperature=temperature, chain_length=chain_length,
            n_designs=n_designs, seed=seed, design=design, chain_runner=chain_runner,
        )
        return CriterionRow(sigma2=s2, bias_value=b, msq_value=m)

    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            rows = tuple(pool.map(one, family.variances))
    else:
        rows = tuple(one(s2) for s2 in family.variances)
    best = min(rows, key=lambda r: (r.combined, r.sigma2)).sigma2
    params = {
        "t": t,
        "temperature": temperature,
        "chain_length": chain_length,
        "n_designs": n_designs,
        "seed": seed,
    }
    return CriterionReport(regime=regime, rows=rows, best_sigma2=best, params=params)
