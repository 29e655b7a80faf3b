"""Shared test oracles, independent of the library's own numerics."""

import math

import numpy as np
from scipy import special, stats


def closed_form_gibbs_moment_1d(y, t, temperature, k):
    """Exact scalar Gibbs moment E[X^k] via truncated-normal algebra.

    On each side of zero the exponent is an exact quadratic:

        x >= 0:  F(x) = (x - (y - t))^2 / (2 t) + (y - t/2)
        x <= 0:  F(x) = (x - (y + t))^2 / (2 t) - (y + t/2)

    so the law is a two-component mixture of Gaussians truncated at zero.
    Component log-weights use the normal log-CDF; moments come from
    scipy.stats.truncnorm.  This shares no code path with the quadrature
    oracle it cross-checks.
    """
    s = math.sqrt(t * temperature)
    a = y - t
    c = y + t
    log_w_pos = -(y - t / 2.0) / temperature + special.log_ndtr(a / s)
    log_w_neg = (y + t / 2.0) / temperature + special.log_ndtr(-c / s)
    shift = max(log_w_pos, log_w_neg)
    w_pos = math.exp(log_w_pos - shift)
    w_neg = math.exp(log_w_neg - shift)
    p_pos = w_pos / (w_pos + w_neg)
    p_neg = 1.0 - p_pos
    if k == 0:
        return 1.0
    pos = stats.truncnorm((0.0 - a) / s, np.inf, loc=a, scale=s)
    neg = stats.truncnorm(-np.inf, (0.0 - c) / s, loc=c, scale=s)
    moment = 0.0
    if p_pos > 0.0:
        moment += p_pos * pos.moment(k)
    if p_neg > 0.0:
        moment += p_neg * neg.moment(k)
    return moment


def batch_means_se(series, n_batches=50):
    """Standard error of the series mean, robust to autocorrelation."""
    x = np.asarray(series, dtype=float)
    size = (x.size // n_batches) * n_batches
    means = x[:size].reshape(n_batches, -1).mean(axis=1)
    return float(means.std(ddof=1) / math.sqrt(n_batches))


def random_problem(rng, max_n=6, max_p=6):
    """A small random instance for identity and certificate sweeps."""
    from bpdngibbs import Problem

    n = int(rng.integers(1, max_n + 1))
    p = int(rng.integers(1, max_p + 1))
    a = rng.normal(size=(n, p))
    y = rng.normal(scale=2.0, size=n)
    t = float(rng.uniform(0.3, 2.0))
    return Problem(matrix_a=a, data_y=y, smoothing_t=t)
