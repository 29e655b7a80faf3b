"""Problem data and the l1-penalized least squares objective."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "NumericalError",
    "Problem",
    "objective",
    "objective_gap",
    "soft_threshold",
    "load_problem",
]


class NumericalError(RuntimeError):
    """A computation failed numerically (non-finite value, no convergence)."""


@dataclass(frozen=True)
class Problem:
    """An l1-penalized least squares instance.

    Holds the n x p measurement matrix A, the data vector y of length n and
    the smoothing parameter t > 0.  The objective is

        F(x) = ||x||_1 + ||A x - y||^2 / (2 t).

    Instances are immutable; all operations on them are pure functions, so a
    single Problem can be shared freely between concurrent chains.
    """

    matrix_a: np.ndarray
    data_y: np.ndarray
    smoothing_t: float

    def __post_init__(self) -> None:
        a = np.array(self.matrix_a, dtype=float, ndmin=2)
        y = np.array(self.data_y, dtype=float).reshape(-1)
        if a.ndim != 2 or a.size == 0:
            raise ValueError("matrix_a must be a non-empty 2-d array")
        if y.size != a.shape[0]:
            raise ValueError(f"data_y has length {y.size}, expected {a.shape[0]}")
        if not (np.isfinite(a).all() and np.isfinite(y).all()):
            raise ValueError("matrix_a and data_y must be finite")
        t = float(self.smoothing_t)
        if not (np.isfinite(t) and t > 0.0):
            raise ValueError("smoothing_t must be positive and finite")
        if not np.abs(a).sum(axis=0).max() > 0.0:
            raise ValueError("matrix_a needs at least one nonzero column")
        a.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "matrix_a", a)
        object.__setattr__(self, "data_y", y)
        object.__setattr__(self, "smoothing_t", t)

    @property
    def n(self) -> int:
        return self.matrix_a.shape[0]

    @property
    def p(self) -> int:
        return self.matrix_a.shape[1]


def _check_dim(x, p: int) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != p:
        raise ValueError(f"x has dimension {x.size}, expected {p}")
    return x


def objective(problem: Problem, x) -> float:
    """F(x) = ||x||_1 + ||A x - y||^2 / (2 t).  Always nonnegative."""
    x = _check_dim(x, problem.p)
    r = problem.matrix_a @ x - problem.data_y
    return float(np.abs(x).sum() + (r @ r) / (2.0 * problem.smoothing_t))


def objective_gap(problem: Problem, solution, x) -> float:
    """Exact gap F(x) - F(x*) written around a minimizer.

    Uses the decomposition

        F(x) - m = sum_i |x_i| (1 - sgn(x_i) xi_i) + ||A (x - x*)||^2 / (2 t)

    valid for any minimizer x* with dual certificate xi.  The sign convention
    at zero never matters because the ambiguous term carries a factor |x_i|.
    Both summands are nonnegative whenever |xi_i| <= 1.
    """
    x = _check_dim(x, problem.p)
    l1_term = float(np.sum(np.abs(x) * (1.0 - np.sign(x) * solution.xi)))
    d = problem.matrix_a @ (x - solution.x_star)
    return l1_term + float(d @ d) / (2.0 * problem.smoothing_t)


def soft_threshold(y, t: float):
    """Soft threshold: 0 for |y| <= t, otherwise y shrunk toward 0 by t.

    Elementwise on arrays; scalar in, scalar out.
    """
    if not t > 0.0:
        raise ValueError("threshold t must be positive")
    arr = np.asarray(y, dtype=float)
    out = np.sign(arr) * np.maximum(np.abs(arr) - t, 0.0)
    if np.ndim(y) == 0:
        return float(out)
    return out


def load_problem(path) -> Problem:
    """Read a Problem from a whitespace-separated text file.

    Layout: one line "n p t", then n rows of p entries for A, then one row of
    n entries for y.  Line breaks are cosmetic; only token order matters.
    """
    tokens = Path(path).read_text().split()
    if len(tokens) < 3:
        raise ValueError("problem file needs a header line 'n p t'")
    n, p = int(tokens[0]), int(tokens[1])
    t = float(tokens[2])
    need = 3 + n * p + n
    if len(tokens) != need:
        raise ValueError(
            f"problem file has {len(tokens)} tokens, expected {need} for n={n}, p={p}"
        )
    vals = np.array([float(v) for v in tokens[3:]])
    return Problem(matrix_a=vals[: n * p].reshape(n, p), data_y=vals[n * p :], smoothing_t=t)
