import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gravipend.constants import default_constants
from gravipend.dynamics import PendulumConfig
from gravipend.interferometer import InterferometerSpec
from gravipend.noise_budget import (
    NoiseParams,
    RegimeThresholds,
    regime_report,
    thermal_rms,
)


def params(**kwargs):
    defaults = dict(
        temperature=1e-2, mode_frequency=1e5, effective_mass=1e-14, superposition_scale=1e-4
    )
    defaults.update(kwargs)
    return NoiseParams(**defaults)


class TestThermalRms:
    def test_reference_point(self):
        # sqrt(k_B T / (m_eff omega_m^2)) at 10 mK, 1e5 rad/s, 1e-14 kg:
        # picometre-scale motion
        assert thermal_rms(params()) == pytest.approx(3.7162e-11, rel=1e-4)

    def test_square_root_temperature_scaling(self):
        assert thermal_rms(params(temperature=4e-2)) == pytest.approx(
            2.0 * thermal_rms(params()), rel=1e-14
        )

    def test_inverse_frequency_scaling(self):
        assert thermal_rms(params(mode_frequency=2e5)) == pytest.approx(
            0.5 * thermal_rms(params()), rel=1e-14
        )

    @settings(max_examples=200, deadline=None)
    @given(
        t1=st.floats(1e-4, 1e2),
        t2=st.floats(1e-4, 1e2),
        w=st.floats(1e2, 1e8),
        m=st.floats(1e-18, 1e-10),
    )
    def test_monotonicity(self, t1, t2, w, m):
        lo, hi = sorted((t1, t2))
        rms_lo = thermal_rms(params(temperature=lo, mode_frequency=w, effective_mass=m))
        rms_hi = thermal_rms(params(temperature=hi, mode_frequency=w, effective_mass=m))
        assert rms_lo <= rms_hi

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError, match="temperature"):
            params(temperature=0.0)


class TestRegimeReport:
    def pendulum(self, length=0.5):
        return PendulumConfig(length=length, initial_angle=2e-4)

    def spec(self, t_total=1e-3):
        return InterferometerSpec(total_time=t_total, spin_acceleration=1600.0)

    def test_reference_configuration_passes(self):
        report = regime_report(self.pendulum(), self.spec(), params())
        assert report.all_passed
        assert report.flags() == "all_pass"
        assert report["quasi_inertial"].value == pytest.approx(1.962e-5, rel=1e-3)
        assert report["thermal"].value == pytest.approx(3.716e-7, rel=1e-3)

    def test_freefall_boundary_location(self):
        report = regime_report(self.pendulum(), self.spec(), params())
        assert 1e-2 < report.freefall_boundary_time < 1e-1

    def test_sequence_as_long_as_period_fails(self):
        cfg = self.pendulum()
        long_spec = InterferometerSpec(
            total_time=cfg.period, spin_acceleration=1600.0
        )
        report = regime_report(cfg, long_spec, params())
        assert not report["short_time"].passed
        assert not report.all_passed
        assert report.flags().startswith("fail:")

    def test_failures_are_entries_not_exceptions(self):
        # slow flexural mode breaks the timescale separation but still
        # produces a complete report
        slow = params(mode_frequency=1e2)
        report = regime_report(self.pendulum(), self.spec(), slow)
        assert not report["timescale_separation"].passed
        assert len(report.checks) == 5

    def test_thresholds_are_configurable(self):
        tight = RegimeThresholds(thermal_ratio=1e-9)
        report = regime_report(self.pendulum(), self.spec(), params(), thresholds=tight)
        assert not report["thermal"].passed

    def test_as_dict_round_trip(self):
        report = regime_report(self.pendulum(), self.spec(), params())
        doc = report.as_dict()
        assert doc["all_passed"] is True
        assert {c["name"] for c in doc["checks"]} == {
            "quasi_inertial", "short_time", "small_angle", "thermal", "timescale_separation",
        }

    def test_large_angle_flagged(self):
        wide = PendulumConfig(length=0.5, initial_angle=0.1)
        report = regime_report(wide, self.spec(), params())
        assert not report["small_angle"].passed
