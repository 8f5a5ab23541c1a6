import math

import numpy as np
import pytest

from goodfun import (DomainError, anger_J, anger_diag_asym,
                     anger_reflected_asym, anger_shifted_asym, load_constants)
from goodfun.constants import GAMMA_THIRD

# pinned by independent high-precision quadrature
J_3p2_1p5 = 0.00555158604922521878
J_1000_1000 = 0.0447306729479640409
J_1001_M1000 = -0.0406311171257063004
DIAG_AT_6 = 0.246162703873882771  # sqrt(3) Gamma(1/3) / (6 pi)


def test_j_at_origin():
    r = anger_J(0.0, 0.0)
    assert abs(r.value - 1.0) <= max(r.error_estimate, 1e-14)


def test_j_half_order_at_zero():
    # int of cos(nu th) gives sin(nu pi)/(nu pi)
    r = anger_J(0.5, 0.0)
    assert abs(r.value - 2.0 / math.pi) <= max(r.error_estimate, 1e-14)


@pytest.mark.parametrize("k", [1, -1, 2, -2, 3, 5])
def test_j_integer_orders_vanish_at_zero(k):
    r = anger_J(float(k), 0.0)
    assert abs(r.value) <= max(r.error_estimate, 1e-13)


def test_j_pinned_values():
    r = anger_J(3.2, 1.5)
    assert abs(r.value - J_3p2_1p5) <= max(r.error_estimate, 1e-13)
    r = anger_J(1000.0, 1000.0)
    assert abs(r.value - J_1000_1000) <= max(r.error_estimate, 1e-12)
    r = anger_J(1001.0, -1000.0)
    assert abs(r.value - J_1001_M1000) <= max(r.error_estimate, 1e-12)


def test_diag_formula_value():
    r = anger_diag_asym(6.0)
    assert r.value == pytest.approx(DIAG_AT_6, rel=1e-15)
    assert r.method == "asymptotic"


def test_diag_power_law_scaling():
    assert anger_diag_asym(6000.0).value == pytest.approx(
        0.1 * anger_diag_asym(6.0).value, rel=1e-14)


def test_diag_oracle_comparison():
    x = 1000.0
    j = anger_J(x, x)
    a = anger_diag_asym(x)
    assert abs(j.value - a.value) <= a.error_estimate + j.error_estimate


def test_reflected_cosine_peaks_and_zeros():
    # cos(pi (x - 1/6)) = 1 at x = 1/6 + 2m exactly
    x = 1.0 / 6.0 + 20.0
    r = anger_reflected_asym(x)
    assert r.value == pytest.approx(GAMMA_THIRD / (3 * math.pi) * (6 / x) ** (1 / 3),
                                    rel=1e-15)
    # cos vanishes at x = 2/3 + m
    r = anger_reflected_asym(2.0 / 3.0 + 9.0)
    assert abs(r.value) < 1e-15


def test_reflected_oracle_comparison():
    x = 1000.0
    j = anger_J(x, -x)
    a = anger_reflected_asym(x)
    assert abs(j.value - a.value) <= a.error_estimate + j.error_estimate


def test_shifted_k0_reduces_to_reflected():
    for x in [10.5, 123.25]:
        assert anger_shifted_asym(x, 0).value == anger_reflected_asym(x).value


@pytest.mark.parametrize("x,k", [(1000.0, 1), (1000.0, -2), (1000.0, 5)])
def test_shifted_oracle_comparison(x, k):
    j = anger_J(x + k, -x)
    a = anger_shifted_asym(x, k)
    assert abs(j.value - a.value) <= a.error_estimate + j.error_estimate


def test_shifted_odd_even_split():
    # the k-odd term cancels in value(x,k) + value(x,-k)
    x = 357.8
    for k in [1, 2, 5]:
        total = anger_shifted_asym(x, k).value + anger_shifted_asym(x, -k).value
        even = 2.0 * (-1.0) ** k * anger_reflected_asym(x).value
        assert total == pytest.approx(even, rel=1e-13, abs=1e-16)


def test_domain_errors():
    for fn in (anger_diag_asym, anger_reflected_asym):
        with pytest.raises(DomainError):
            fn(2.0)
    with pytest.raises(DomainError):
        anger_shifted_asym(1.5, 1)
    with pytest.raises(DomainError):
        anger_shifted_asym(100.0, 10 ** 6 + 1)


def test_diag_remainder_scaling_trend():
    consts = load_constants()
    xs = [1e2, 1e3, 1e4]
    scaled = [x * abs(anger_J(x, x).value - anger_diag_asym(x).value) for x in xs]
    # bounded by the frozen constant (with its 2x margin) and not growing
    assert max(scaled) <= consts.c_anger_diag
    slope = np.polyfit(np.log(xs), np.log(scaled), 1)[0]
    assert slope <= 0.1
    print(f"diagonal remainder constant over sweep: {max(scaled):.4f}")


def test_shifted_remainder_single_constant():
    consts = load_constants()
    worst = 0.0
    for x in [1e2, 1e3]:
        for k in [0, 1, -1, 2, -2, 5, -5]:
            r = abs(anger_J(x + k, -x).value - anger_shifted_asym(x, k).value)
            worst = max(worst, x * r / (1.0 + abs(k) ** 3))
    assert worst <= consts.c_anger_shifted
    print(f"shifted remainder constant over sweep: {worst:.4f}")
