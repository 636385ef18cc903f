import math

import numpy as np
import pytest

from gravipend.constants import Tolerances
from gravipend.quadrature import QuadratureError, integrate

TOL = Tolerances()


def test_polynomial_is_exact():
    res = integrate(lambda t: t * t, 0.0, 1.0, TOL)
    assert res.value == pytest.approx(1.0 / 3.0, rel=1e-14)
    assert res.error_estimate < 1e-12


def test_sine_over_half_period():
    res = integrate(np.sin, 0.0, math.pi, TOL)
    assert res.value == pytest.approx(2.0, rel=1e-13)


def test_error_estimate_covers_true_error():
    true = 2.0 / 3.0  # integral of sqrt over [0, 1]
    res = integrate(np.sqrt, 0.0, 1.0, TOL)
    assert abs(res.value - true) <= max(res.error_estimate, 1e-13 * true)


def test_kinked_integrand_with_breakpoint_seed():
    # |t - 0.3| integrates to 0.3^2/2 + 0.7^2/2
    res = integrate(lambda t: np.abs(t - 0.3), 0.0, 1.0, TOL, breakpoints=[0.3])
    assert res.value == pytest.approx(0.5 * (0.3**2 + 0.7**2), rel=1e-13)
    assert res.intervals >= 2  # the seed split the domain


def test_subdivision_budget_exhaustion_raises():
    sharp = Tolerances(quad_rel_tol=1e-13, max_subdivisions=3)
    with pytest.raises(QuadratureError, match="subdivisions"):
        integrate(lambda t: 1.0 / np.sqrt(t), 1e-12, 1.0, sharp)


def test_cancelling_integral_converges_with_abs_tol():
    # integral of sin over a full period is zero: a purely relative
    # target is unsatisfiable, an absolute one is not.
    res = integrate(np.sin, 0.0, 2.0 * math.pi, TOL, abs_tol=1e-12)
    assert abs(res.value) < 1e-12


def test_determinism():
    f = lambda t: np.exp(-t) / (1.0 + t * t)
    r1 = integrate(f, 0.0, 5.0, TOL, breakpoints=[1.0, 2.5])
    r2 = integrate(f, 0.0, 5.0, TOL, breakpoints=[1.0, 2.5])
    assert r1.value == r2.value
    assert r1.error_estimate == r2.error_estimate


def test_invalid_bounds_rejected():
    with pytest.raises(ValueError):
        integrate(np.sin, 1.0, 1.0, TOL)
