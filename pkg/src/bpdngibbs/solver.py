"""Accelerated proximal-gradient solver with certificates and support classification."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .model import NumericalError, Problem, objective, soft_threshold

__all__ = [
    "SolverError",
    "SolverOptions",
    "PlseSolution",
    "dual_vector",
    "classify_support",
    "uniqueness_certificate",
    "lipschitz_constant",
    "solve",
]


class SolverError(NumericalError):
    """Raised when the solver does not reach the requested tolerance.

    Carries the last iterate and the last composite-gradient-mapping norm so
    callers can inspect how far the run got.
    """

    def __init__(self, message: str, last_iterate, residual: float):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual


@dataclass(frozen=True)
class SolverOptions:
    max_iterations: int = 100_000
    gradient_tolerance: float = 1e-10
    support_tolerance: float = 1e-7      # |x*_i| at or below this counts as zero
    certificate_tolerance: float = 1e-6  # |xi_i| within this of 1 counts as boundary

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        for name in ("gradient_tolerance", "support_tolerance", "certificate_tolerance"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class PlseSolution:
    """A minimizer together with its certificate and support partition.

    support_s holds the indices with |x*_i| above the support tolerance,
    zero_set_i0 the complement, and boundary_set the zero indices whose
    certificate entry sits at 1 in absolute value (within tolerance).
    `unique` reports the sufficient uniqueness condition only: False means
    "not certified unique", never "not unique".
    """

    x_star: np.ndarray
    xi: np.ndarray
    m: float
    support_s: tuple
    zero_set_i0: tuple
    boundary_set: tuple
    unique: bool
    tolerance_used: float

    def __post_init__(self) -> None:
        x = np.array(self.x_star, dtype=float).reshape(-1)
        xi = np.array(self.xi, dtype=float).reshape(-1)
        x.setflags(write=False)
        xi.setflags(write=False)
        object.__setattr__(self, "x_star", x)
        object.__setattr__(self, "xi", xi)


def dual_vector(problem: Problem, x) -> np.ndarray:
    """The certificate candidate A^T (y - A x) / t at an arbitrary point."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != problem.p:
        raise ValueError(f"x has dimension {x.size}, expected {problem.p}")
    return problem.matrix_a.T @ (problem.data_y - problem.matrix_a @ x) / problem.smoothing_t


def classify_support(x_star, xi, opts: SolverOptions | None = None):
    """Split indices into support S, zero set I0 and boundary zero set.

    S collects |x*_i| > support_tolerance; within the complement, the boundary
    collects |xi_i| >= 1 - certificate_tolerance.
    """
    opts = opts or SolverOptions()
    x_star = np.asarray(x_star, dtype=float).reshape(-1)
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if x_star.size != xi.size:
        raise ValueError("x_star and xi must have the same dimension")
    on = np.abs(x_star) > opts.support_tolerance
    support = tuple(int(i) for i in np.flatnonzero(on))
    zeros = tuple(int(i) for i in np.flatnonzero(~on))
    at_one = np.abs(xi) >= 1.0 - opts.certificate_tolerance
    boundary = tuple(int(i) for i in np.flatnonzero(~on & at_one))
    return support, zeros, boundary


def uniqueness_certificate(problem: Problem, solution: PlseSolution) -> bool:
    """True when the Gram matrix over S u boundary is numerically invertible.

    This is a sufficient condition for the minimizer to be unique; the empty
    index set is vacuously certified.
    """
    idx = sorted(set(solution.support_s) | set(solution.boundary_set))
    if not idx:
        return True
    sub = problem.matrix_a[:, idx]
    sv = np.linalg.svd(sub.T @ sub, compute_uv=False)
    return bool(sv[-1] > problem.p * np.finfo(float).eps * sv[0])


def lipschitz_constant(problem: Problem) -> float:
    """Largest eigenvalue of A^T A divided by t, via power iteration.

    Runs at most 50 rounds on A^T A and stops once the Rayleigh quotient
    moves by less than 1e-10 relatively.
    """
    b = problem.matrix_a.T @ problem.matrix_a
    v = np.linspace(1.0, 2.0, problem.p)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(50):
        w = b @ v
        new = float(v @ w)
        nrm = float(np.linalg.norm(w))
        if nrm == 0.0:
            break
        v = w / nrm
        if abs(new - lam) <= 1e-10 * max(1.0, abs(new)):
            lam = new
            break
        lam = new
    return max(lam, np.finfo(float).tiny) / problem.smoothing_t


def solve(problem: Problem, opts: SolverOptions | None = None, x0=None) -> PlseSolution:
    """Minimize F by the accelerated proximal-gradient iteration.

    Step size 1/L with L = lambda_max(A^T A) / t; the proximal map is the
    componentwise soft threshold at 1/L.  Terminates once the composite
    gradient mapping at the extrapolation point has norm at most
    gradient_tolerance, and raises SolverError otherwise.
    """
    opts = opts or SolverOptions()
    p = problem.p
    a = problem.matrix_a
    y = problem.data_y
    t = problem.smoothing_t
    big_l = lipschitz_constant(problem)
    step = 1.0 / big_l

    if x0 is None:
        x = np.zeros(p)
    else:
        x = np.asarray(x0, dtype=float).reshape(-1).copy()
        if x.size != p:
            raise ValueError(f"x0 has dimension {x.size}, expected {p}")
    z = x.copy()
    t_k = 1.0
    converged = False
    residual = math.inf
    for _ in range(opts.max_iterations):
        grad = a.T @ (a @ z - y) / t
        x_next = soft_threshold(z - step * grad, step)
        residual = big_l * float(np.linalg.norm(z - x_next))
        if residual <= opts.gradient_tolerance:
            x = x_next
            converged = True
            break
        t_next = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t_k * t_k))
        z = x_next + ((t_k - 1.0) / t_next) * (x_next - x)
        x = x_next
        t_k = t_next
    if not converged:
        raise SolverError(
            f"no convergence after {opts.max_iterations} iterations "
            f"(gradient mapping norm {residual:.3e})",
            last_iterate=x,
            residual=residual,
        )

    xi = dual_vector(problem, x)
    support, zeros, boundary = classify_support(x, xi, opts)
    sol = PlseSolution(
        x_star=x,
        xi=xi,
        m=objective(problem, x),
        support_s=support,
        zero_set_i0=zeros,
        boundary_set=boundary,
        unique=False,
        tolerance_used=opts.certificate_tolerance,
    )
    return replace(sol, unique=uniqueness_certificate(problem, sol))
