import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from gravipend.constants import Tolerances
from gravipend.dynamics import PendulumConfig, free_fall_trajectory, small_angle_trajectory
from gravipend.interferometer import (
    InterferometerSpec,
    ScheduleClosureError,
    acceleration_for_separation,
    branch_separation,
    build_branch_pair,
    build_branch_pair_constrained,
    default_schedule,
    is_small_angle,
    required_angle,
    spin_acceleration_from_gradient,
)

TOL = Tolerances()
ZERO = free_fall_trajectory(0.0, 0.0)


def spec(total_time=1e-3, a=1600.0, **kwargs):
    return InterferometerSpec(total_time=total_time, spin_acceleration=a, **kwargs)


class TestBranchSeparation:
    def test_zero_acceleration(self):
        assert branch_separation(0.0, 0.7) == 0.0

    def test_zero_time(self):
        assert branch_separation(123.0, 0.0) == 0.0

    def test_hundred_micron_target(self):
        # acceleration tuned so the opening growth law reaches 1e-4 m
        t = 1e-3
        a = 2.0 * 1e-4 / t**2
        assert branch_separation(a, t) == pytest.approx(1e-4, rel=1e-15)

    def test_quadratic_growth(self):
        assert branch_separation(10.0, 2.0) == 4.0 * branch_separation(10.0, 1.0)

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            branch_separation(1.0, -1.0)


class TestRequiredAngle:
    def test_hundred_micron_on_half_metre(self):
        assert required_angle(1e-4, 0.5) == pytest.approx(2e-4, rel=1e-15)

    def test_zero_separation(self):
        assert required_angle(0.0, 0.5) == 0.0

    def test_full_length_flagged_as_large_angle(self):
        theta = required_angle(0.5, 0.5)
        assert theta == 1.0
        assert not is_small_angle(theta)
        assert is_small_angle(2e-4)

    def test_rejects_nonpositive_length(self):
        with pytest.raises(ValueError):
            required_angle(1e-4, 0.0)


def test_gradient_helper():
    # a = mu * dB/dx / m
    assert spin_acceleration_from_gradient(1e-23, 1e4, 1e-14) == pytest.approx(1e-5)
    with pytest.raises(ValueError):
        spin_acceleration_from_gradient(1e-23, 1e4, 0.0)


class TestScheduleValidation:
    def test_default_schedule_closes(self):
        s = spec()
        assert len(s.schedule) == 4
        assert sum(d for d, _ in s.schedule) == pytest.approx(1e-3, rel=1e-15)

    def test_unbalanced_velocity_rejected(self):
        with pytest.raises(ScheduleClosureError):
            spec(schedule=((3e-4, +1), (4e-4, -1), (3e-4, +1)))

    def test_unclosed_position_rejected(self):
        # velocity closes but the double integral does not
        with pytest.raises(ScheduleClosureError):
            spec(schedule=((2.5e-4, +1), (2.5e-4, -1), (2.5e-4, +1), (2.5e-4, -1)))

    def test_bad_sign_rejected(self):
        with pytest.raises(ValueError, match="sign"):
            spec(schedule=((5e-4, 2), (5e-4, -1)))

    def test_duration_mismatch_rejected(self):
        with pytest.raises(ValueError, match="total_time"):
            spec(schedule=((1e-4, +1), (1e-4, -1), (1e-4, -1), (1e-4, +1)))

    def test_zero_sign_dwell_segment_allowed(self):
        # a common-path dwell in the middle of the sequence
        s = InterferometerSpec(
            total_time=1e-3,
            spin_acceleration=1600.0,
            schedule=((2e-4, +1), (2e-4, -1), (2e-4, 0), (2e-4, -1), (2e-4, +1)),
        )
        pair = build_branch_pair(s, ZERO)
        t = np.linspace(4.2e-4, 5.8e-4, 9)
        np.testing.assert_allclose(pair.separation(t), pair.separation(4e-4), rtol=1e-12)

    def test_breakpoints(self):
        assert spec().breakpoints == (0.0, 2.5e-4, 5e-4, 7.5e-4, 1e-3)


class TestFreeBranchPair:
    def test_peak_separation_at_midpoint(self):
        t_total, a = 1e-3, 1600.0
        pair = build_branch_pair(spec(t_total, a), ZERO)
        assert pair.max_separation == pytest.approx(a * t_total**2 / 16.0, rel=1e-12)
        assert pair.separation(t_total / 2.0) == pytest.approx(pair.max_separation, rel=1e-12)

    def test_brute_force_double_integration_oracle(self):
        # midpoint rule for the piecewise-constant acceleration (exact
        # with segment-aligned panels), trapezoid for the piecewise-
        # linear velocity (also exact)
        t_total, a = 1e-3, 1600.0
        s = spec(t_total, a)
        pair = build_branch_pair(s, ZERO)
        t = np.linspace(0.0, t_total, 200_001)
        h = t[1] - t[0]
        mid = 0.5 * (t[1:] + t[:-1])
        accel = np.where(mid < 2.5e-4, a, np.where(mid < 7.5e-4, -a, a))
        vel = np.concatenate([[0.0], np.cumsum(accel * h)])
        sep = np.concatenate([[0.0], np.cumsum(0.5 * (vel[1:] + vel[:-1]) * h)])
        np.testing.assert_allclose(
            pair.separation(t), sep, rtol=0.0, atol=1e-12 * pair.max_separation
        )

    def test_closure(self):
        pair = build_branch_pair(spec(), ZERO)
        assert abs(pair.separation(1e-3)) < 1e-12 * pair.max_separation
        assert pair.closure_residual < 1e-12 * pair.max_separation
        assert pair.left(0.0) == pair.right(0.0)

    def test_zero_acceleration_branches_equal_base(self):
        base = small_angle_trajectory(PendulumConfig(length=0.5, initial_angle=2e-4))
        pair = build_branch_pair(spec(a=0.0), base)
        t = np.linspace(0.0, 1e-3, 17)
        np.testing.assert_array_equal(pair.left(t), base(t))
        np.testing.assert_array_equal(pair.right(t), base(t))

    def test_separation_independent_of_base(self):
        pend = small_angle_trajectory(PendulumConfig(length=0.5, initial_angle=2e-4))
        free = free_fall_trajectory(1e-4, 9.81 * 2e-4)
        pair_p = build_branch_pair(spec(), pend)
        pair_f = build_branch_pair(spec(), free)
        t = np.linspace(0.0, 1e-3, 101)
        diff_p = pair_p.right(t) - pair_p.left(t)
        diff_f = pair_f.right(t) - pair_f.left(t)
        np.testing.assert_allclose(diff_p, diff_f, rtol=0.0, atol=1e-12 * pair_p.max_separation)

    def test_acceleration_for_separation_roundtrip(self):
        a = acceleration_for_separation(1e-4, 1e-3)
        assert a == pytest.approx(1600.0, rel=1e-12)
        pair = build_branch_pair(spec(a=a), ZERO)
        assert pair.max_separation == pytest.approx(1e-4, rel=1e-12)


class TestConstrainedBranchPair:
    def test_matches_ode_oracle(self):
        # s'' = sigma(t) a - omega^2 s, integrated segment by segment so
        # the solver never steps across a forcing discontinuity
        t_total, a, omega = 1e-3, 1600.0, math.sqrt(9.81 / 0.25)
        s = spec(t_total, a)
        pair = build_branch_pair_constrained(s, ZERO, omega)

        state = [0.0, 0.0]
        t_ref, s_ref = [], []
        t0 = 0.0
        for duration, sign in s.schedule:
            f = sign * a
            sol = solve_ivp(
                lambda t, y: [y[1], f - omega**2 * y[0]],
                (0.0, duration), state, method="DOP853",
                rtol=1e-13, atol=1e-20, dense_output=True,
            )
            local = np.linspace(0.0, duration, 201)
            t_ref.append(t0 + local)
            s_ref.append(sol.sol(local)[0])
            state = [float(sol.y[0, -1]), float(sol.y[1, -1])]
            t0 += duration
        t_ref = np.concatenate(t_ref)
        s_ref = np.concatenate(s_ref)
        np.testing.assert_allclose(
            pair.separation(t_ref), s_ref, rtol=0.0, atol=1e-11 * pair.max_separation
        )

    def test_residual_is_quadratic_in_omega_t(self):
        t_total, a = 1e-3, 1600.0
        res = []
        for omega in (2.0, 4.0):
            pair = build_branch_pair_constrained(spec(t_total, a), ZERO, omega)
            res.append(pair.closure_residual)
        assert res[1] / res[0] == pytest.approx(4.0, rel=0.01)

    def test_separation_reduced_relative_to_free(self):
        # the restoring force fights the splitting: the constrained peak
        # sits (omega t)^2-close below the free one
        omega = math.sqrt(9.81 / 0.25)
        free = build_branch_pair(spec(), ZERO)
        con = build_branch_pair_constrained(spec(), ZERO, omega)
        assert con.max_separation < free.max_separation
        rel = 1.0 - con.max_separation / free.max_separation
        assert 1e-6 < rel < 1e-4

    def test_rejects_nonpositive_omega(self):
        with pytest.raises(ValueError):
            build_branch_pair_constrained(spec(), ZERO, 0.0)
