"""Metropolis chains at fixed temperature and along geometric annealing schedules."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .model import NumericalError, Problem

__all__ = [
    "MhConfig",
    "AnnealConfig",
    "ChainResult",
    "Batch1DResult",
    "replicate_seed",
    "mh_chain",
    "sa_chain",
    "mh_chain_batch_1d",
    "anneal_temperatures",
    "sa_iterations",
]

_PROPOSAL_MODES = ("random_walk", "independence")


def replicate_seed(master_seed: int, index: int) -> int:
    """Derive the stream seed for replicate `index` from a master seed.

    Hashes the pair (master_seed, index) through numpy's SeedSequence, so a
    replicate's stream does not depend on how many replicates run or in what
    order.
    """
    ss = np.random.SeedSequence((int(master_seed), int(index)))
    return int(ss.generate_state(1, np.uint64)[0])


def _coerce_state(value):
    if value is None:
        return None
    return tuple(float(v) for v in np.asarray(value, dtype=float).reshape(-1))


@dataclass(frozen=True)
class MhConfig:
    """Settings for a fixed-temperature Metropolis chain.

    proposal_sigma2 is the per-coordinate variance of the Gaussian draw; a
    sequence gives one variance per coordinate.  proposal_mode "random_walk"
    adds the draw to the current state; "independence" uses the draw itself
    as the proposal (with the corresponding Hastings correction).
    """

    temperature: float
    proposal_sigma2: float | tuple = 1.0
    chain_length: int = 5000
    burn_in: int = 0
    seed: int = 0
    initial_state: tuple | None = None
    proposal_mode: str = "random_walk"

    def __post_init__(self) -> None:
        if not self.temperature > 0.0:
            raise ValueError("temperature must be positive")
        if not np.all(np.asarray(self.proposal_sigma2, dtype=float) > 0.0):
            raise ValueError("proposal variance must be positive")
        if self.chain_length < 1:
            raise ValueError("chain_length must be at least 1")
        if not 0 <= self.burn_in < self.chain_length:
            raise ValueError("burn_in must be nonnegative and below chain_length")
        if self.proposal_mode not in _PROPOSAL_MODES:
            raise ValueError(f"proposal_mode must be one of {_PROPOSAL_MODES}")
        object.__setattr__(self, "initial_state", _coerce_state(self.initial_state))


@dataclass(frozen=True)
class AnnealConfig:
    """Annealing run with the geometric schedule: step k runs at 1 / (beta0 * q**k)."""

    beta0: float = 1.0
    q: float = 1.001
    chain_length: int = 5000
    proposal_sigma2: float | tuple = 1.0
    seed: int = 0
    initial_state: tuple | None = None
    proposal_mode: str = "random_walk"

    def __post_init__(self) -> None:
        if not self.beta0 > 0.0:
            raise ValueError("beta0 must be positive")
        if not self.q > 1.0:
            raise ValueError("q must exceed 1 so the temperature decreases")
        if not np.all(np.asarray(self.proposal_sigma2, dtype=float) > 0.0):
            raise ValueError("proposal variance must be positive")
        if self.chain_length < 1:
            raise ValueError("chain_length must be at least 1")
        if self.proposal_mode not in _PROPOSAL_MODES:
            raise ValueError(f"proposal_mode must be one of {_PROPOSAL_MODES}")
        object.__setattr__(self, "initial_state", _coerce_state(self.initial_state))


@dataclass(frozen=True)
class ChainResult:
    """States visited by one chain plus acceptance statistics.

    Fixed-temperature runs drop the burn-in prefix from `states`; annealed
    runs keep the whole trajectory and carry the temperature schedule.
    acceptance_rate counts accepted proposals over all proposals, burn-in
    included.
    """

    states: np.ndarray
    acceptance_rate: float
    config: object
    temperatures: np.ndarray | None = None


@dataclass(frozen=True)
class Batch1DResult:
    """A bundle of scalar chains; column i belongs to data value ys[i]."""

    states: np.ndarray            # (kept_steps, n_chains)
    acceptance_rates: np.ndarray  # (n_chains,)
    replicate_seeds: tuple


def _sigma_vector(p: int, sigma2) -> np.ndarray:
    s2 = np.broadcast_to(np.asarray(sigma2, dtype=float), (p,))
    return np.sqrt(s2)


def _initial_state(problem: Problem, initial) -> np.ndarray:
    if initial is None:
        return np.zeros(problem.p)
    x = np.asarray(initial, dtype=float).reshape(-1).copy()
    if x.size != problem.p:
        raise ValueError(f"initial state has dimension {x.size}, expected {problem.p}")
    return x


def _metropolis_loop(problem, x0, temps, sigma, independence, rng):
    n = temps.size
    a = problem.matrix_a
    y = problem.data_y
    inv_2t = 0.5 / problem.smoothing_t
    draws = rng.normal(size=(n, x0.size)) * sigma
    uniforms = rng.random(n)
    inv_2s2 = 0.5 / (sigma * sigma)

    # Overflow in the quadratic term is detected and reported, not warned about.
    with np.errstate(over="ignore"):
        x = x0
        r = a @ x - y
        fx = float(np.abs(x).sum() + (r @ r) * inv_2t)
        if not math.isfinite(fx):
            raise NumericalError(f"objective not finite at the initial state {x0}")
        states = np.empty((n, x0.size))
        accepted = 0
        for k in range(n):
            xp = draws[k] if independence else x + draws[k]
            r = a @ xp - y
            fp = float(np.abs(xp).sum() + (r @ r) * inv_2t)
            if not math.isfinite(fp):
                raise NumericalError(f"objective not finite at step {k}, state {xp}")
            t_k = temps[k]
            if t_k > 0.0:
                log_ratio = (fx - fp) / t_k
            else:
                log_ratio = 0.0 if fp <= fx else -math.inf
            if independence:
                log_ratio += float((xp * xp - x * x) @ inv_2s2)
            if log_ratio >= 0.0 or uniforms[k] < math.exp(log_ratio):
                x = xp
                fx = fp
                accepted += 1
            states[k] = x
    return states, accepted / n


def mh_chain(problem: Problem, config: MhConfig) -> ChainResult:
    """Run Metropolis targeting exp(-F/T) on a Problem.

    Proposals are Gaussian; a move is accepted with probability
    min(1, exp(-(F(x') - F(x)) / T)) (times the Hastings factor in
    independence mode).  Deterministic in (problem, config): the generator
    is seeded from config.seed and consumed in a fixed order.
    """
    x0 = _initial_state(problem, config.initial_state)
    sigma = _sigma_vector(problem.p, config.proposal_sigma2)
    rng = np.random.default_rng(config.seed)
    temps = np.full(config.chain_length, float(config.temperature))
    states, rate = _metropolis_loop(
        problem, x0, temps, sigma, config.proposal_mode == "independence", rng
    )
    return ChainResult(states=states[config.burn_in :], acceptance_rate=rate, config=config)


def sa_chain(problem: Problem, config: AnnealConfig) -> ChainResult:
    """Run the annealed chain: step k accepts at temperature 1 / (beta0 * q**k).

    Returns the full trajectory together with the schedule actually used.
    """
    x0 = _initial_state(problem, config.initial_state)
    sigma = _sigma_vector(problem.p, config.proposal_sigma2)
    rng = np.random.default_rng(config.seed)
    temps = anneal_temperatures(config.beta0, config.q, config.chain_length)
    states, rate = _metropolis_loop(
        problem, x0, temps, sigma, config.proposal_mode == "independence", rng
    )
    return ChainResult(states=states, acceptance_rate=rate, config=config, temperatures=temps)


def mh_chain_batch_1d(
    smoothing_t: float,
    ys,
    temperatures,
    sigma2,
    n_steps: int,
    seed: int,
    *,
    burn_in: int = 0,
    initial_states=None,
    proposal_mode: str = "random_walk",
) -> Batch1DResult:
    """Vectorized bundle of scalar chains with objectives |x| + (x - y_i)^2 / (2 t).

    Chain i consumes its own stream seeded with replicate_seed(seed, i), so
    any column is reproducible in isolation and independent of the bundle
    size.  `temperatures` may be a scalar, one value per chain (m,), or a
    per-step schedule shaped (n_steps, 1) or (n_steps, m); schedule entries
    that underflow to zero turn the step into pure descent.
    """
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    m = ys.size
    if not smoothing_t > 0.0:
        raise ValueError("smoothing_t must be positive")
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    if not 0 <= burn_in < n_steps:
        raise ValueError("burn_in must be nonnegative and below n_steps")
    if proposal_mode not in _PROPOSAL_MODES:
        raise ValueError(f"proposal_mode must be one of {_PROPOSAL_MODES}")
    sig2 = np.broadcast_to(np.asarray(sigma2, dtype=float), (m,))
    if not np.all(sig2 > 0.0):
        raise ValueError("proposal variance must be positive")
    temps = np.broadcast_to(np.asarray(temperatures, dtype=float), (n_steps, m))
    if np.any(temps < 0.0):
        raise ValueError("temperatures must be nonnegative")

    seeds = tuple(replicate_seed(seed, i) for i in range(m))
    draws = np.empty((n_steps, m))
    uniforms = np.empty((n_steps, m))
    for i, s in enumerate(seeds):
        r = np.random.default_rng(s)
        draws[:, i] = r.normal(size=n_steps)
        uniforms[:, i] = r.random(n_steps)
    draws *= np.sqrt(sig2)

    if initial_states is None:
        x = np.zeros(m)
    else:
        x = np.broadcast_to(np.asarray(initial_states, dtype=float), (m,)).copy()
    inv_2t = 0.5 / smoothing_t
    inv_2s2 = 0.5 / sig2
    independence = proposal_mode == "independence"
    any_zero_temp = bool(np.any(temps == 0.0))

    fx = np.abs(x) + (x - ys) ** 2 * inv_2t
    if not np.isfinite(fx).all():
        raise NumericalError("objective not finite at an initial state")
    states = np.empty((n_steps, m))
    accepted = np.zeros(m, dtype=np.int64)
    for k in range(n_steps):
        xp = draws[k] if independence else x + draws[k]
        fp = np.abs(xp) + (xp - ys) ** 2 * inv_2t
        if not np.isfinite(fp).all():
            j = int(np.flatnonzero(~np.isfinite(fp))[0])
            raise NumericalError(f"objective not finite at step {k} in chain {j}")
        t_k = temps[k]
        if any_zero_temp:
            pos = t_k > 0.0
            log_ratio = np.where(
                pos,
                (fx - fp) / np.where(pos, t_k, 1.0),
                np.where(fp <= fx, 0.0, -np.inf),
            )
        else:
            log_ratio = (fx - fp) / t_k
        if independence:
            log_ratio = log_ratio + (xp * xp - x * x) * inv_2s2
        ok = uniforms[k] < np.exp(np.minimum(log_ratio, 0.0))
        x = np.where(ok, xp, x)
        fx = np.where(ok, fp, fx)
        accepted += ok
        states[k] = x
    return Batch1DResult(
        states=states[burn_in:],
        acceptance_rates=accepted / n_steps,
        replicate_seeds=seeds,
    )


def anneal_temperatures(beta0: float, q: float, n: int) -> np.ndarray:
    """The geometric schedule T_k = 1 / (beta0 * q**k) for k = 0 .. n-1."""
    if not beta0 > 0.0:
        raise ValueError("beta0 must be positive")
    if not q > 1.0:
        raise ValueError("q must exceed 1")
    with np.errstate(over="ignore"):
        beta = beta0 * np.power(q, np.arange(n, dtype=float))
        return 1.0 / beta


def sa_iterations(t0: float, t_target: float, q: float) -> int:
    """Steps of the geometric schedule needed to cool from t0 to t_target.

    Returns the smallest integer k with t0 * q**(-k) <= t_target.  Equal
    temperatures return 0 with a warning; a target above t0 is an error.
    """
    if not (t0 > 0.0 and t_target > 0.0):
        raise ValueError("temperatures must be positive")
    if not q > 1.0:
        raise ValueError("q must exceed 1")
    if t_target > t0:
        raise ValueError(f"target temperature {t_target} exceeds the start {t0}")
    if t_target == t0:
        warnings.warn("target temperature equals the start; 0 steps needed")
        return 0
    ratio = math.log(t0 / t_target) / math.log(q)
    nearest = round(ratio)
    if abs(ratio - nearest) < 1e-9:
        return int(nearest)
    return int(math.ceil(ratio))
