"""Shared domain types, parameter validation, and the result model.

Every quantity handled by this package is a dimensionless real in binary64;
there is no unit system.  Error estimates are absolute, not relative,
because the function values range over many orders of magnitude (roughly
from ``1/rho**2`` down to ``exp(-2*x*rho)``).

All types here are immutable values and safe to share between threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

__all__ = [
    "GoodFunError",
    "DomainError",
    "NumericalError",
    "PrecisionError",
    "EnvelopeViolated",
    "HypothesisViolated",
    "GoodParams",
    "QuadConfig",
    "RegimeKind",
    "Regime",
    "EvalResult",
    "validate",
    "cos_pi",
    "sin_pi",
]


class GoodFunError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GoodFunError, ValueError):
    """A parameter violates its domain constraint; the message names it."""


class NumericalError(GoodFunError, ArithmeticError):
    """A computation produced a non-finite or internally inconsistent value."""


class PrecisionError(GoodFunError):
    """Binary64 cannot honestly represent the requested evaluation."""


class EnvelopeViolated(GoodFunError):
    """A sampled integrand value exceeded its declared decay envelope."""


class HypothesisViolated(GoodFunError):
    """A numerically checked hypothesis of an expansion failed."""


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class GoodParams:
    """Parameter set (gamma, rho, x) and optionally xi for the Q function.

    Constraints: gamma >= 0, rho > 0 strictly, x finite, and xi > 1
    strictly when present.
    """

    gamma: float
    rho: float
    x: float
    xi: Optional[float] = None


def validate(params: GoodParams) -> GoodParams:
    """Return ``params`` unchanged if every domain constraint holds.

    Raises :class:`DomainError` naming the violated constraint otherwise.
    Idempotent by construction.
    """
    gamma = _require_finite("gamma", params.gamma)
    rho = _require_finite("rho", params.rho)
    _require_finite("x", params.x)
    if gamma < 0.0:
        raise DomainError(f"gamma must be >= 0, got {gamma}")
    if rho <= 0.0:
        raise DomainError(f"rho must be > 0 strictly, got {rho}")
    if params.xi is not None:
        xi = _require_finite("xi", params.xi)
        if xi <= 1.0:
            raise DomainError(f"xi must be > 1 strictly, got {xi}")
    return params


@dataclass(frozen=True)
class QuadConfig:
    """Quadrature tolerances and mesh-control knobs.

    abs_tol, rel_tol
        Target absolute / relative error for an integral.
    max_panels
        Hard cap on the number of panels; when hit, results are returned
        with an honest error estimate and ``converged=False``.
    endpoint_scale
        Geometric refinement near declared hot spots stops at panels of
        length ``endpoint_scale * width`` (width is the hot-spot scale,
        e.g. rho for the Good integrands).
    oscillation_panel_factor
        A priori cap on panel length as a fraction of the oscillation
        period ``2*pi/(1 + osc_frequency)``.  This is deliberately not
        error-driven, to avoid aliasing traps at large frequencies.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_panels: int = 200_000
    endpoint_scale: float = 0.25
    oscillation_panel_factor: float = 0.25

    def __post_init__(self) -> None:
        for name in ("abs_tol", "rel_tol", "endpoint_scale", "oscillation_panel_factor"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise DomainError(f"QuadConfig.{name} must be finite and > 0, got {v!r}")
        if self.max_panels <= 0:
            raise DomainError(f"QuadConfig.max_panels must be > 0, got {self.max_panels}")


class RegimeKind(Enum):
    """The five asymptotic cases for H(x, rho), keyed by s = x*rho**3 and u = x*rho."""

    LARGE_S = "LARGE_S"                  # s large: x**(-1/3)/rho**2 cosine law
    CRITICAL_S = "CRITICAL_S"            # s of order one: cubic-tail amplitude/phase law
    SMALL_S_LARGE_U = "SMALL_S_LARGE_U"  # s -> 0, u -> infinity: cos(pi x)/(2 rho)
    FINITE_U = "FINITE_U"                # u bounded: (exp(-2u) + cos(pi x))/(2 rho)
    FIXED_POINT = "FIXED_POINT"          # x small: continuity regime, oracle only


@dataclass(frozen=True)
class Regime:
    """A regime classification together with its scaling diagnostics."""

    kind: RegimeKind
    s: float  # x * rho**3
    u: float  # x * rho

    @classmethod
    def diagnostics(cls, kind: RegimeKind, x: float, rho: float) -> "Regime":
        # s is derived from u so the two diagnostics agree to one rounding.
        u = x * rho
        s = (u * rho) * rho
        return cls(kind=kind, s=s, u=u)


_METHODS = ("oracle", "asymptotic", "identity")


@dataclass(frozen=True)
class EvalResult:
    """A numeric value with an absolute error estimate and a method tag.

    ``regime`` is only carried by asymptotic results; oracle and identity
    results never have one.
    """

    value: Union[float, complex]
    error_estimate: float
    method: str
    regime: Optional[Regime] = None
    converged: bool = True

    def __post_init__(self) -> None:
        if not (math.isfinite(self.error_estimate) and self.error_estimate >= 0.0):
            raise NumericalError(
                f"error_estimate must be finite and >= 0, got {self.error_estimate!r}"
            )
        if self.method not in _METHODS:
            raise DomainError(f"method must be one of {_METHODS}, got {self.method!r}")
        if self.regime is not None and self.method != "asymptotic":
            raise DomainError("only asymptotic results may carry a regime tag")


def cos_pi(x: float) -> float:
    """cos(pi*x) with exact argument reduction modulo 2.

    fmod(x, 2) is exact in binary64, so this stays accurate for huge x
    where pi*x itself cannot be represented to full precision.
    """
    r = math.fmod(x, 2.0)
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    return math.cos(math.pi * r)


def sin_pi(x: float) -> float:
    """sin(pi*x) with exact argument reduction modulo 2."""
    r = math.fmod(x, 2.0)
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    return math.sin(math.pi * r)
