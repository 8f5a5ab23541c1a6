"""Asymptotic approximants for H(x, rho) across the (x, rho) plane.

Two closed-form laws cover the plane, glued by a classifier on the
scaling products s = x*rho**3 and u = x*rho:

large s (or rho not small)
    H = (Gamma(1/3)/(3 pi rho^2)) cos(pi (x - 1/6)) (6/x)^(1/3) + R,
    |R| <= C_large/(x rho^4), for x > 2.

small rho
    H = exp(-2 x rho)/(2 rho)
        + (1/(pi rho)) Re{ exp(-i pi x) * V(x rho^3) } + R,   |R| <= C_small,
    where V(lam) = int_0^inf exp(i lam t^3/6)/(1 + t^2) dt is the
    cubic-tail integral, written V(lam) = C(lam) exp(i pi psi(lam)).

V is always computed on the rotated ray t -> exp(i pi/6) t, where the
integrand decays like exp(-lam t^3 / 6) and the quadrature is routine;
oscillatory quadrature on the real axis is never used for it.

The power-law dispatch for paths x = eta * rho**(-alpha) and the
self-contained asymptotic law for I(lam) = int_0^inf e^{i lam u^3}/(1+u^2) du
live here as well.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .constants import GAMMA_THIRD, Constants, get_constants
from .core import (DomainError, EvalResult, NumericalError, QuadConfig, Regime,
                   RegimeKind, cos_pi, sin_pi)
from .good import eval_H
from .quadrature import (AlgebraicEnvelope, CubicExpEnvelope, Integrand,
                         QuadResult, integrate_tail)

__all__ = ["CubicTailIntegral", "cubic_tail", "rotated_cubic_integral",
           "i_lambda_oracle", "i_lambda_asym", "h_asym_large", "h_asym_small",
           "classify", "h_approx", "corollary_path_main"]


@dataclass(frozen=True)
class CubicTailIntegral:
    """V(lam) = int_0^inf exp(i lam t^3/6)/(1+t^2) dt with its polar split.

    c_mod is |V| and psi_arg is arg(V)/pi on the branch (-1, 1] with
    psi_arg(0) = 0.  Re V > 0 for every lam >= 0, so psi_arg actually
    lives in (-1/2, 1/2) and the branch never jumps.
    """

    lam: float
    value: complex
    c_mod: float
    psi_arg: float
    err: float

    def __post_init__(self) -> None:
        if abs(self.value - self.c_mod * cmath.exp(1j * math.pi * self.psi_arg)) > 1e-12:
            raise NumericalError("polar reconstruction of the cubic-tail integral "
                                 "disagrees with its value beyond 1e-12")
        if not self.value.real > 0.0:
            raise NumericalError(f"cubic-tail integral must have Re > 0, got {self.value}")
        if not -1.0 < self.psi_arg <= 1.0:
            raise NumericalError(f"psi_arg must lie in (-1, 1], got {self.psi_arg}")


_ROT = cmath.exp(1j * math.pi / 3.0)   # rotated denominator 1 + e^{i pi/3} t^2
_ROT_HALF = cmath.exp(1j * math.pi / 6.0)
# |1/(1 + e^{i pi/3} t^2)| = 1/sqrt(1 + t^2 + t^4) <= (2/sqrt(3))/(1 + t^2)
_ALG_AMPLITUDE = 2.0 / math.sqrt(3.0)


def rotated_cubic_integral(rate: float, cfg: Optional[QuadConfig] = None) -> QuadResult:
    """exp(i pi/6) * int_0^inf exp(-rate t^3) / (1 + e^{i pi/3} t^2) dt.

    Equals int_0^inf exp(i rate u^3)/(1+u^2) du by contour rotation; the
    rotated integrand is non-oscillatory.  rate = 0 falls back to the
    algebraic envelope.
    """
    if not (math.isfinite(rate) and rate >= 0.0):
        raise DomainError(f"rate must be >= 0, got {rate}")

    def fn(t: np.ndarray) -> np.ndarray:
        denom = 1.0 + _ROT * t * t
        # cannot happen analytically (|denom| >= 1); guards rotation sign bugs
        if np.any(np.abs(denom) < 0.5):
            raise NumericalError("rotated denominator dipped below 0.5")
        if rate == 0.0:
            return 1.0 / denom
        return np.exp(-rate * t ** 3) / denom

    if rate == 0.0:
        envelope = AlgebraicEnvelope(_ALG_AMPLITUDE)
    else:
        envelope = CubicExpEnvelope(1.0, rate)
    res = integrate_tail(Integrand(fn), envelope, cfg)
    return QuadResult(_ROT_HALF * res.value, res.err, res.converged, res.panels)


def cubic_tail(lam: float, cfg: Optional[QuadConfig] = None) -> CubicTailIntegral:
    """Evaluate V(lam) = int_0^inf exp(i lam t^3/6)/(1+t^2) dt for lam >= 0."""
    if not (math.isfinite(lam) and lam >= 0.0):
        raise DomainError(f"cubic_tail requires lam >= 0, got {lam}")
    if lam == 0.0:
        # arctangent integral, exactly pi/2
        return CubicTailIntegral(lam=0.0, value=complex(math.pi / 2.0), c_mod=math.pi / 2.0,
                                 psi_arg=0.0, err=0.0)
    res = rotated_cubic_integral(lam / 6.0, cfg)
    value = complex(res.value)
    return CubicTailIntegral(lam=lam, value=value, c_mod=abs(value),
                             psi_arg=cmath.phase(value) / math.pi, err=res.err)


def i_lambda_oracle(lam: float, cfg: Optional[QuadConfig] = None) -> QuadResult:
    """Rotated-contour value of I(lam) = int_0^inf exp(i lam u^3)/(1+u^2) du."""
    if not (math.isfinite(lam) and lam > 0.0):
        raise DomainError(f"i_lambda_oracle requires lam > 0, got {lam}")
    return rotated_cubic_integral(lam, cfg)


def i_lambda_asym(lam: float) -> Tuple[complex, float]:
    """I(lam) = e^{i pi/6} Gamma(1/3)/(3 lam^(1/3)) + R with |R| <= 1/(3 lam).

    The bound is explicit (not calibrated): it comes from
    |1/(1 + e^{i pi/3} t^2) - 1| <= t^2 on the rotated ray.
    """
    if not (math.isfinite(lam) and lam > 0.0):
        raise DomainError(f"i_lambda_asym requires lam > 0, got {lam}")
    main = _ROT_HALF * GAMMA_THIRD / (3.0 * lam ** (1.0 / 3.0))
    return main, 1.0 / (3.0 * lam)


def h_asym_large(x: float, rho: float,
                 constants: Optional[Constants] = None) -> EvalResult:
    """Large-s approximation of H; error estimate C_large/(x rho^4)."""
    if not (math.isfinite(x) and x > 2.0):
        raise DomainError(f"h_asym_large requires x > 2, got {x}")
    if not (math.isfinite(rho) and rho > 0.0):
        raise DomainError(f"rho must be > 0 strictly, got {rho}")
    c = get_constants(constants)
    value = (GAMMA_THIRD / (3.0 * math.pi * rho * rho)
             * cos_pi(x - 1.0 / 6.0) * (6.0 / x) ** (1.0 / 3.0))
    return EvalResult(value=value, error_estimate=c.c_h_large / (x * rho ** 4),
                      method="asymptotic",
                      regime=Regime.diagnostics(RegimeKind.LARGE_S, x, rho))


def h_asym_small(x: float, rho: float, cfg: Optional[QuadConfig] = None,
                 constants: Optional[Constants] = None) -> EvalResult:
    """Small-rho approximation of H; error estimate the O(1) constant C_small."""
    if not (math.isfinite(x) and x > 0.0):
        raise DomainError(f"h_asym_small requires x > 0, got {x}")
    if not (math.isfinite(rho) and rho > 0.0):
        raise DomainError(f"rho must be > 0 strictly, got {rho}")
    c = get_constants(constants)
    regime = classify(x, rho, constants)
    tail = cubic_tail(regime.s, cfg)
    # Re{ e^{-i pi x} V } with exact mod-2 reduction of the phase
    osc = cos_pi(x) * tail.value.real + sin_pi(x) * tail.value.imag
    value = math.exp(-2.0 * x * rho) / (2.0 * rho) + osc / (math.pi * rho)
    return EvalResult(value=value, error_estimate=c.c_h_small + tail.err / (math.pi * rho),
                      method="asymptotic", regime=regime)


def classify(x: float, rho: float, constants: Optional[Constants] = None) -> Regime:
    """Classify (x, rho) into the asymptotic regime used by h_approx."""
    if not (math.isfinite(x) and x > 0.0 and math.isfinite(rho) and rho > 0.0):
        raise DomainError(f"classify requires positive finite inputs, got x={x}, rho={rho}")
    c = get_constants(constants)
    u = x * rho
    s = (u * rho) * rho
    if x <= 2.0:
        kind = RegimeKind.FIXED_POINT
    elif s >= c.s_hi or rho >= c.rho_cut:
        kind = RegimeKind.LARGE_S
    elif s > c.s_lo:
        kind = RegimeKind.CRITICAL_S
    elif u >= c.u_hi:
        kind = RegimeKind.SMALL_S_LARGE_U
    else:
        kind = RegimeKind.FINITE_U
    return Regime(kind=kind, s=s, u=u)


def h_approx(x: float, rho: float, cfg: Optional[QuadConfig] = None,
             constants: Optional[Constants] = None) -> EvalResult:
    """Best asymptotic value of H for (x, rho), or the oracle near fixed points."""
    regime = classify(x, rho, constants)
    if regime.kind is RegimeKind.LARGE_S:
        return h_asym_large(x, rho, constants)
    if regime.kind is RegimeKind.FIXED_POINT:
        hv = eval_H(x, rho, cfg)
        return EvalResult(value=hv.h, error_estimate=hv.err, method="oracle",
                          converged=hv.converged)
    return h_asym_small(x, rho, cfg, constants)


def corollary_path_main(alpha: float, eta: float, rho: float,
                        cfg: Optional[QuadConfig] = None,
                        constants: Optional[Constants] = None) -> EvalResult:
    """Main term of H along the path x = eta * rho**(-alpha).

    Dispatch on alpha (exact comparison against the row boundaries 1, 3):

        alpha > 3      (Gamma(1/3)/(3 pi rho^2)) cos(pi (x - 1/6)) (6/x)^(1/3)
        alpha = 3      (C(eta)/(pi rho)) cos(pi (x - psi(eta)))
        1 < alpha < 3  cos(pi x)/(2 rho)
        alpha = 1      (exp(-2 eta) + cos(pi x))/(2 rho)
        0 < alpha < 1  (1 + cos(pi x))/(2 rho)

    The alpha > 3 row carries the same prefactor Gamma(1/3)/(3 pi rho^2)
    as h_asym_large; a doubled variant fails cross-validation against the
    quadrature oracle.  eta = 0 is accepted for alpha <= 3 as the
    degenerate limit of the bottom rows (x = 0).
    """
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise DomainError(f"alpha must be > 0, got {alpha}")
    if not (math.isfinite(eta) and eta >= 0.0):
        raise DomainError(f"eta must be >= 0, got {eta}")
    if not (math.isfinite(rho) and rho > 0.0):
        raise DomainError(f"rho must be > 0 strictly, got {rho}")
    c = get_constants(constants)
    x = eta * rho ** (-alpha)
    if x <= 2.0 and eta > 0.0:
        raise DomainError(f"path point x = eta*rho^-alpha = {x} is not > 2; "
                          "take rho small enough")
    if alpha > 3.0:
        if eta == 0.0:
            raise DomainError("eta = 0 is not meaningful for alpha > 3")
        return h_asym_large(x, rho, constants)
    if alpha == 3.0:
        tail = cubic_tail(eta, cfg)
        value = tail.c_mod / (math.pi * rho) * cos_pi(x - tail.psi_arg)
        err = c.c_h_small + tail.err / (math.pi * rho)
        regime = Regime.diagnostics(RegimeKind.CRITICAL_S, x, rho)
    elif alpha > 1.0:
        value = cos_pi(x) / (2.0 * rho)
        err = c.c_h_small
        regime = Regime.diagnostics(RegimeKind.SMALL_S_LARGE_U, x, rho)
    elif alpha == 1.0:
        value = (math.exp(-2.0 * eta) + cos_pi(x)) / (2.0 * rho)
        err = c.c_h_small
        regime = Regime.diagnostics(RegimeKind.FINITE_U, x, rho)
    else:
        value = (1.0 + cos_pi(x)) / (2.0 * rho)
        err = c.c_h_small
        regime = Regime.diagnostics(RegimeKind.FINITE_U, x, rho)
    return EvalResult(value=value, error_estimate=err, method="asymptotic", regime=regime)
