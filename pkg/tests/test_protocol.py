import json
import math

import pytest

from gravipend.config import bundled_config, config_from_dict, with_overrides
from gravipend.protocol import result_document, simulate_protocol


@pytest.fixture(scope="module")
def bundled_result():
    config = bundled_config("reference_quarter_m")
    return config, simulate_protocol(config)


class TestSimulateProtocol:
    def test_visibility_consistent_with_phases(self, bundled_result):
        _, res = bundled_result
        obs = res.observables()
        assert obs["V_free"] == pytest.approx(math.cos(obs["delta_phi_free"]), rel=1e-14)
        assert obs["V_pend"] == pytest.approx(math.cos(obs["delta_phi_pend"]), rel=1e-14)

    def test_visibility_shift_within_bound(self, bundled_result):
        _, res = bundled_result
        obs = res.observables()
        assert abs(obs["V_pend"] - obs["V_free"]) <= obs["visibility_bound"] + 1e-15

    def test_negativity_closed_form(self, bundled_result):
        _, res = bundled_result
        obs = res.observables()
        expected = 0.5 * abs(math.sin(0.5 * obs["delta_phi_pend"]))
        # the pendulum matrix's own entangling phase differs from the
        # comparison value only at quadrature precision
        assert obs["negativity"] == pytest.approx(expected, abs=1e-10)

    def test_decoherence_scales_visibility(self):
        base = bundled_config("reference_quarter_m").effective
        d = json.loads(json.dumps(base))
        d["decoherence_rate"] = 1e3
        res = simulate_protocol(config_from_dict(d))
        obs = res.observables()
        assert obs["V_decohered"] == pytest.approx(
            obs["V_pend"] * math.exp(-1e3 * 1e-3), rel=1e-12
        )

    def test_correction_matches_phase_difference(self, bundled_result):
        _, res = bundled_result
        cmp = res.comparison
        assert cmp.relative_correction == pytest.approx(
            (cmp.delta_phi_pend - cmp.delta_phi_free) / cmp.delta_phi_free, rel=1e-12
        )

    def test_identical_release_keeps_quadratic_correction(self):
        # without mirrored release the common mode cancels exactly, but
        # the constrained splitting still produces the full correction
        base = bundled_config("reference_quarter_m").effective
        d = json.loads(json.dumps(base))
        d["geometry"]["mirror_release"] = False
        res = simulate_protocol(config_from_dict(d))
        mirrored = simulate_protocol(bundled_config("reference_quarter_m"))
        a = res.comparison.relative_correction
        b = mirrored.comparison.relative_correction
        assert a == pytest.approx(b, rel=1e-4)


class TestResultDocument:
    def test_document_structure(self, bundled_result):
        config, res = bundled_result
        doc = result_document(config, res)
        assert set(doc) == {
            "config",
            "phase_matrix_free",
            "phase_matrix_pendulum",
            "observables",
            "unresolved_reason",
            "regime",
        }
        matrix = doc["phase_matrix_free"]
        assert matrix["entangling_phase"] == pytest.approx(
            matrix["phi_ll"] + matrix["phi_rr"] - matrix["phi_lr"] - matrix["phi_rl"],
            rel=1e-12,
        )
        assert matrix["errors"]["phi_rr"] > 0.0

    def test_document_is_json_serialisable(self, bundled_result):
        config, res = bundled_result
        text = json.dumps(result_document(config, res))
        assert "relative_correction" in text

    def test_facing_symmetry_visible_in_matrix(self, bundled_result):
        # mirrored splitting puts both cross pairs at the centre
        # distance, so their phases coincide
        config, res = bundled_result
        doc = result_document(config, res)
        m = doc["phase_matrix_pendulum"]
        assert m["phi_lr"] == pytest.approx(m["phi_rl"], rel=1e-12)
        assert abs(m["phi_rr"]) > abs(m["phi_lr"])  # approaching pair dominates
