"""Rescaled-sample verification of the low-temperature limit, plus a quadrature oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .limits import LimitLaw1D, interior_second_moment, ks_statistic
from .model import NumericalError, Problem, soft_threshold
from .sampling import ChainResult, mh_chain_batch_1d
from .solver import PlseSolution

__all__ = [
    "RescaledSample",
    "SignEvent",
    "ScalingRow",
    "partition_indices",
    "rescale_samples",
    "limit_density_nd",
    "sign_event_frequency",
    "brute_force_gibbs_1d",
    "thinning_factor",
    "verify_scaling_1d",
]


@dataclass(frozen=True)
class RescaledSample:
    """One chain state split into fast and slow blocks.

    fast_coords holds x_i / T over the zero set off the boundary; slow_coords
    holds (x_i - x*_i) / sqrt(T) over the support plus the boundary set.
    """

    fast_coords: np.ndarray
    slow_coords: np.ndarray


@dataclass(frozen=True)
class SignEvent:
    """A partition (k1, k2) of the boundary set.

    The event asks the state sign to oppose the certificate sign on every k1
    coordinate and to match it on every k2 coordinate.
    """

    k1: tuple
    k2: tuple


@dataclass(frozen=True)
class ScalingRow:
    """One temperature's entry in a scaling-verification report."""

    temperature: float
    regime: str
    ks: float
    n_used: int
    thinning: int
    acceptance_rate: float
    negative_frequency: float  # nan outside the boundary regime


def partition_indices(solution: PlseSolution):
    """(fast, slow) index sets: zeros off the boundary, support plus boundary."""
    boundary = set(solution.boundary_set)
    fast = tuple(i for i in solution.zero_set_i0 if i not in boundary)
    slow = tuple(sorted(set(solution.support_s) | boundary))
    return fast, slow


def rescale_samples(chain: ChainResult, solution: PlseSolution, temperature: float):
    """Apply the limit scalings to every chain state.

    Fast coordinates are divided by T; slow coordinates are centred at the
    minimizer and divided by sqrt(T).
    """
    if not temperature > 0.0:
        raise ValueError("temperature must be positive")
    states = np.asarray(chain.states, dtype=float)
    if states.ndim == 1:
        states = states[:, None]
    p = solution.x_star.size
    if states.shape[1] != p:
        raise ValueError(
            f"chain dimension {states.shape[1]} does not match the solution dimension {p}"
        )
    fast_idx, slow_idx = partition_indices(solution)
    fast = states[:, list(fast_idx)] / temperature
    slow = (states[:, list(slow_idx)] - solution.x_star[list(slow_idx)]) / math.sqrt(temperature)
    return [
        RescaledSample(fast_coords=fast[k], slow_coords=slow[k])
        for k in range(states.shape[0])
    ]


def limit_density_nd(problem: Problem, solution: PlseSolution, fast, slow) -> float:
    """Unnormalized limit density of the rescaled coordinates.

    Product of the tilted-exponential factor over the fast block, the
    Gaussian factor exp(-||sum_j slow_j A e_j||^2 / (2 t)) over the slow
    block, and sign indicators on the boundary set.  A coordinate exactly at
    zero fails its indicator.  Requires the certified-unique hypothesis.
    """
    if not solution.unique:
        raise ValueError("limit density requires a certified-unique solution")
    fast_idx, slow_idx = partition_indices(solution)
    fast = np.asarray(fast, dtype=float).reshape(-1)
    slow = np.asarray(slow, dtype=float).reshape(-1)
    if fast.size != len(fast_idx) or slow.size != len(slow_idx):
        raise ValueError("coordinate blocks do not match the support partition")
    xi = solution.xi
    value = 1.0
    if fast.size:
        rates = 1.0 - np.sign(fast) * xi[list(fast_idx)]
        value *= float(np.exp(-(np.abs(fast) * rates).sum()))
    boundary = set(solution.boundary_set)
    for j, idx in enumerate(slow_idx):
        if idx in boundary and not np.sign(slow[j]) * np.sign(xi[idx]) > 0.0:
            return 0.0
    if slow.size:
        v = problem.matrix_a[:, list(slow_idx)] @ slow
        value *= math.exp(-float(v @ v) / (2.0 * problem.smoothing_t))
    return value


def sign_event_frequency(chain: ChainResult, solution: PlseSolution, event: SignEvent) -> float:
    """Fraction of states whose signs oppose xi on k1 and match it on k2.

    k1 and k2 must partition the boundary set.  A coordinate exactly at zero
    satisfies neither side of the event.
    """
    k1 = tuple(int(i) for i in event.k1)
    k2 = tuple(int(i) for i in event.k2)
    if set(k1) & set(k2) or set(k1) | set(k2) != set(solution.boundary_set):
        raise ValueError("event sets must partition the boundary set")
    states = np.asarray(chain.states, dtype=float)
    if states.ndim == 1:
        states = states[:, None]
    xi_sign = np.sign(solution.xi)
    ok = np.ones(states.shape[0], dtype=bool)
    for i in k1:
        ok &= np.sign(states[:, i]) == -xi_sign[i]
    for i in k2:
        ok &= np.sign(states[:, i]) == xi_sign[i]
    return float(ok.mean())


def brute_force_gibbs_1d(y: float, t: float, temperature: float, k: int) -> float:
    """Exact scalar Gibbs moment E[X^k] at finite temperature, by quadrature.

    Integrates x^k exp(-(F(x) - F(x*)) / T) over a window wide enough for
    both the T-scale and the sqrt(tT)-scale tails, then normalizes.  k must
    be 0, 1 or 2; k = 0 returns 1 by construction.
    """
    if k not in (0, 1, 2):
        raise ValueError("moment order k must be 0, 1 or 2")
    if not (t > 0.0 and temperature > 0.0):
        raise ValueError("t and temperature must be positive")
    y = float(y)
    x_star = soft_threshold(y, t)
    m = abs(x_star) + (x_star - y) ** 2 / (2.0 * t)

    def weight(x):
        return math.exp(-(abs(x) + (x - y) ** 2 / (2.0 * t) - m) / temperature)

    half = 60.0 * math.sqrt(t * temperature) + 60.0 * temperature
    lo, hi = x_star - half, x_star + half
    pts = [v for v in (0.0, x_star) if lo < v < hi] or None

    z, z_err = integrate.quad(weight, lo, hi, points=pts, limit=200, epsabs=0.0, epsrel=1e-11)
    if not z > 0.0 or z_err > 1e-8 * z:
        raise NumericalError(f"normalization quadrature failed (value {z}, error {z_err})")
    if k == 0:
        return 1.0
    scale = (math.sqrt(t * temperature) + temperature + abs(x_star)) ** k
    mk, mk_err = integrate.quad(
        lambda x: x**k * weight(x),
        lo,
        hi,
        points=pts,
        limit=200,
        epsabs=1e-12 * z * scale,
        epsrel=1e-11,
    )
    if mk_err > 1e-8 * max(abs(mk), z * scale):
        raise NumericalError(f"moment quadrature failed (value {mk}, error {mk_err})")
    return mk / z


def thinning_factor(series, *, threshold: float = 0.1, max_factor: int = 4096) -> int:
    """Smallest power-of-two lag whose autocorrelation drops below the threshold."""
    x = np.asarray(series, dtype=float)
    x = x - x.mean()
    denom = float(x @ x)
    if denom == 0.0:
        return 1
    k = 1
    while k < max_factor and k < x.size:
        rho = float(x[:-k] @ x[k:]) / denom
        if abs(rho) < threshold:
            return k
        k *= 2
    return min(max_factor, max(1, x.size - 1))


def verify_scaling_1d(
    y: float,
    t: float,
    temperatures,
    n_samples: int,
    seed: int,
    *,
    proposal_scale: float = 2.4,
    oversample: int = 32,
):
    """KS distance between rescaled chain samples and the regime's limit law.

    Runs one chain per temperature with the proposal width tied to the
    regime scale, thins to near-independence, applies the regime rescaling
    and compares against the closed-form limit CDF.  Negative y is folded by
    the sign symmetry of the objective.  Returns one ScalingRow per
    temperature, in the given order.
    """
    temps = [float(v) for v in np.atleast_1d(np.asarray(temperatures, dtype=float))]
    if not temps:
        raise ValueError("need at least one temperature")
    if any(v <= 0.0 for v in temps):
        raise ValueError("temperatures must be positive")
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    y = float(y)
    t = float(t)
    flip = y < 0.0
    au = abs(y) / t
    if au < 1.0:
        regime = "interior"
    elif au == 1.0:
        regime = "boundary"
    else:
        regime = "exterior"

    if regime == "interior":
        scales = np.array([tv * math.sqrt(interior_second_moment(au)) for tv in temps])
    else:
        scales = np.array([math.sqrt(t * tv) for tv in temps])
    sigma2 = (proposal_scale * scales) ** 2

    n_raw = int(math.ceil(n_samples * oversample * 1.15))
    burn = n_raw - n_samples * oversample
    batch = mh_chain_batch_1d(
        t,
        np.full(len(temps), y),
        np.asarray(temps),
        sigma2,
        n_raw,
        seed,
        burn_in=burn,
        initial_states=np.full(len(temps), soft_threshold(y, t)),
    )

    rows = []
    for j, tv in enumerate(temps):
        series = batch.states[:, j]
        if flip:
            series = -series
        factor = thinning_factor(series)
        thin = series[::factor]
        neg_freq = math.nan
        if regime == "interior":
            z = thin[:n_samples] / tv
            law = LimitLaw1D("interior", u=au)
        elif regime == "boundary":
            neg_freq = float((series < 0.0).mean())
            pos = thin[thin > 0.0]
            z = pos[:n_samples] / math.sqrt(tv)
            law = LimitLaw1D("boundary", t=t)
        else:
            z = (thin[:n_samples] - (abs(y) - t)) / math.sqrt(tv)
            law = LimitLaw1D("exterior", t=t)
        rows.append(
            ScalingRow(
                temperature=tv,
                regime=regime,
                ks=ks_statistic(z, law.cdf),
                n_used=int(z.size),
                thinning=factor,
                acceptance_rate=float(batch.acceptance_rates[j]),
                negative_frequency=neg_freq,
            )
        )
    return rows
