"""Temperature selection from bias and mean-square targets, per regime.

In each regime the chain's stationary bias and mean square error scale with
known powers of the temperature, so prescribing either target fixes T in
closed form.  Prescribing both is only consistent when they satisfy the
regime's compatibility constraint; the checker reports both candidate
temperatures on a violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .limits import interior_mean, interior_second_moment

__all__ = [
    "TemperatureConstraintError",
    "TemperatureTarget",
    "interior_temperature_from_bias",
    "interior_temperature_from_mse",
    "bias_mse_ratio",
    "boundary_temperature",
    "exterior_temperature",
    "consistent_temperature",
    "temperature_curves",
]

_REGIMES = ("interior", "boundary", "exterior")


class TemperatureConstraintError(ValueError):
    """Bias and MSE targets that no single temperature satisfies."""

    def __init__(self, message: str, bias_temperature: float, mse_temperature: float):
        super().__init__(message)
        self.bias_temperature = bias_temperature
        self.mse_temperature = mse_temperature


@dataclass(frozen=True)
class TemperatureTarget:
    """Bias/MSE targets in one regime.

    regime "interior" uses u = y/t (strictly inside (0, 1) when the bias
    target is set); "boundary" and "exterior" use t.  The exterior regime has
    zero bias by construction, so only mse applies there.
    """

    mse: float
    bias_b: float | None = None
    regime: str = "interior"
    u: float | None = None
    t: float | None = None

    def __post_init__(self) -> None:
        if self.regime not in _REGIMES:
            raise ValueError(f"regime must be one of {_REGIMES}")
        if not self.mse > 0.0:
            raise ValueError("mse must be positive")
        if self.bias_b is not None and self.bias_b < 0.0:
            raise ValueError("bias target must be nonnegative")
        if self.regime == "interior":
            if self.u is None or not 0.0 <= self.u < 1.0:
                raise ValueError("interior regime needs u in [0, 1)")
        else:
            if self.t is None or not self.t > 0.0:
                raise ValueError(f"{self.regime} regime needs t > 0")


def interior_temperature_from_bias(b: float, u: float) -> float:
    """T with stationary bias b below the threshold: b / interior_mean(u)."""
    if not b > 0.0:
        raise ValueError("bias target must be positive")
    if not 0.0 < u < 1.0:
        raise ValueError("bias control needs u strictly inside (0, 1)")
    return b / interior_mean(u)


def interior_temperature_from_mse(mse: float, u: float) -> float:
    """T with stationary mean square mse below the threshold: sqrt(mse / m2)."""
    if not mse > 0.0:
        raise ValueError("mse target must be positive")
    return math.sqrt(mse / interior_second_moment(u))


def bias_mse_ratio(u):
    """The ratio b^2 / MSE a single interior temperature can satisfy.

    Equals interior_mean(u)^2 / interior_second_moment(u); increasing on
    (0, 1) and vanishing at u = 0.
    """
    m1 = interior_mean(u)
    return m1 * m1 / interior_second_moment(u)


def boundary_temperature(
    t: float, bias_b: float | None = None, mse: float | None = None, *, rel_tol: float = 1e-9
) -> float:
    """Temperature at the threshold point, from either target.

    From the bias: pi b^2 / (2 t); from the mean square: mse / t.  With both
    given they must agree, which pins mse = pi b^2 / 2.
    """
    if not t > 0.0:
        raise ValueError("t must be positive")
    if bias_b is None and mse is None:
        raise ValueError("need a bias or an mse target")
    from_bias = None if bias_b is None else math.pi * bias_b**2 / (2.0 * t)
    from_mse = None if mse is None else mse / t
    if from_bias is not None and from_mse is not None:
        if abs(from_bias - from_mse) > rel_tol * max(from_bias, from_mse):
            raise TemperatureConstraintError(
                f"incompatible targets: bias gives T={from_bias}, mse gives T={from_mse}",
                from_bias,
                from_mse,
            )
        return from_bias
    return from_bias if from_bias is not None else from_mse


def exterior_temperature(mse: float, t: float) -> float:
    """mse / t; the bias vanishes identically in this regime."""
    if not mse > 0.0:
        raise ValueError("mse target must be positive")
    if not t > 0.0:
        raise ValueError("t must be positive")
    return mse / t


def consistent_temperature(target: TemperatureTarget, *, rel_tol: float = 1e-6) -> float:
    """The single temperature meeting every target set on a TemperatureTarget.

    When both bias and mse targets are present, verifies the regime's
    compatibility constraint to the given relative tolerance and raises
    TemperatureConstraintError (carrying both candidates) on disagreement.
    The default tolerance is strict; reproduction runs with rounded inputs
    may pass a looser one, e.g. 0.05.
    """
    if target.regime == "interior":
        from_mse = interior_temperature_from_mse(target.mse, target.u)
        if target.bias_b is None:
            return from_mse
        from_bias = interior_temperature_from_bias(target.bias_b, target.u)
    elif target.regime == "boundary":
        from_mse = target.mse / target.t
        if target.bias_b is None:
            return from_mse
        from_bias = math.pi * target.bias_b**2 / (2.0 * target.t)
    else:
        if target.bias_b not in (None, 0.0):
            raise ValueError("the exterior regime admits no bias target")
        return exterior_temperature(target.mse, target.t)
    if abs(from_bias - from_mse) > rel_tol * max(from_bias, from_mse):
        raise TemperatureConstraintError(
            f"incompatible targets in the {target.regime} regime: "
            f"bias gives T={from_bias}, mse gives T={from_mse}",
            from_bias,
            from_mse,
        )
    return from_bias


def temperature_curves(bias_b: float, mse: float, n_points: int = 512):
    """Curves u -> T(bias), u -> T(mse) and the constraint ratio on (0, 1).

    Uses a uniform grid on (0.001, 0.999) so the divergence of the bias curve
    at u -> 0 and of the moments at u -> 1 stay finite.  Returns the tuple
    (u, t_bias, t_mse, constraint) of equally long arrays.
    """
    if not bias_b > 0.0 or not mse > 0.0:
        raise ValueError("bias and mse must be positive")
    if n_points < 2:
        raise ValueError("need at least two grid points")
    u = np.linspace(0.001, 0.999, n_points)
    m1 = interior_mean(u)
    m2 = interior_second_moment(u)
    return u, bias_b / m1, np.sqrt(mse / m2), m1 * m1 / m2
