"""The Anger function and its large-argument asymptotic forms.

    J_nu(x) = (1/pi) int_0^pi cos(nu*th - x*sin th) dth

For non-integer nu this generalizes the Bessel function of the first
kind.  Three asymptotic regimes are provided, all obtained from the
two-term stationary-phase expansion around the degenerate (cubic)
stationary point of th -> th - sin th:

  diagonal    J_x(x)      ~  (sqrt(3)/(6 pi)) Gamma(1/3) (6/x)^(1/3)
  reflected   J_x(-x)     =  (Gamma(1/3)/(3 pi)) (6/x)^(1/3) cos(pi (x - 1/6)) + O(1/x)
  shifted     J_{x+k}(-x) =  ((-1)^k/(3 pi)) { Gamma(1/3) (6/x)^(1/3) cos(pi (x - 1/6))
                             + k Gamma(2/3) (6/x)^(2/3) sin(pi (x - 1/3)) }
                             + O((1 + |k|^3)/x)

The remainder constants are calibrated by sweep (see goodfun.calibrate)
and frozen in the constants file; the theory proves only their existence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .constants import (GAMMA_THIRD, GAMMA_TWO_THIRDS, SQRT3, Constants,
                        get_constants)
from .core import DomainError, EvalResult, QuadConfig, cos_pi, sin_pi
from .quadrature import Integrand, integrate_finite

__all__ = ["AngerParams", "anger_J", "anger_diag_asym", "anger_reflected_asym",
           "anger_shifted_asym"]

_K_MAX = 10 ** 6


@dataclass(frozen=True)
class AngerParams:
    """Order nu, argument x, and an integer order shift k with |k| <= 1e6."""

    nu: float
    x: float
    k: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.nu) and math.isfinite(self.x)):
            raise DomainError(f"nu and x must be finite, got {self.nu}, {self.x}")
        if abs(self.k) > _K_MAX:
            raise DomainError(f"|k| must be <= {_K_MAX}, got {self.k}")


def anger_J(nu: float, x: float, cfg: Optional[QuadConfig] = None) -> EvalResult:
    """Oracle value of J_nu(x) by adaptive quadrature."""
    AngerParams(nu, x)

    def fn(th: np.ndarray) -> np.ndarray:
        return np.cos(nu * th - x * np.sin(th))

    f = Integrand(fn, osc_frequency=0.5 * (abs(nu) + abs(x)))
    res = integrate_finite(f, 0.0, math.pi, cfg)
    return EvalResult(value=res.value.real / math.pi, error_estimate=res.err / math.pi,
                      method="oracle", converged=res.converged)


def _require_x(x: float) -> None:
    if not (math.isfinite(x) and x > 2.0):
        raise DomainError(f"asymptotic form requires x > 2, got {x}")


def anger_diag_asym(x: float, constants: Optional[Constants] = None) -> EvalResult:
    """One-term approximation of J_x(x); error estimate C_diag/x."""
    _require_x(x)
    c = get_constants(constants)
    value = SQRT3 / (6.0 * math.pi) * GAMMA_THIRD * (6.0 / x) ** (1.0 / 3.0)
    return EvalResult(value=value, error_estimate=c.c_anger_diag / x, method="asymptotic")


def anger_reflected_asym(x: float, constants: Optional[Constants] = None) -> EvalResult:
    """One-term approximation of J_x(-x); error estimate C_ref/x."""
    _require_x(x)
    c = get_constants(constants)
    value = GAMMA_THIRD / (3.0 * math.pi) * (6.0 / x) ** (1.0 / 3.0) * cos_pi(x - 1.0 / 6.0)
    return EvalResult(value=value, error_estimate=c.c_anger_reflected / x, method="asymptotic")


def anger_shifted_asym(x: float, k: int,
                       constants: Optional[Constants] = None) -> EvalResult:
    """Two-term approximation of J_{x+k}(-x); error C_shift*(1+|k|^3)/x.

    For k = 0 this reduces exactly to the reflected form.
    """
    _require_x(x)
    AngerParams(x, x, k)
    c = get_constants(constants)
    sign = -1.0 if k % 2 else 1.0
    t1 = GAMMA_THIRD * (6.0 / x) ** (1.0 / 3.0) * cos_pi(x - 1.0 / 6.0)
    t2 = k * GAMMA_TWO_THIRDS * (6.0 / x) ** (2.0 / 3.0) * sin_pi(x - 1.0 / 3.0)
    value = sign / (3.0 * math.pi) * (t1 + t2)
    err = c.c_anger_shifted * (1.0 + abs(k) ** 3) / x
    return EvalResult(value=value, error_estimate=err, method="asymptotic")
