import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from transduce.errors import DataError, SingularityError
from transduce.estimator import (MixingBands, PIEZO_OPTOMECHANICAL_BENCHMARK,
                                 PumpGeometry, SWEEP_CSV_HEADER,
                                 damage_limited_power, eta1_rel, eta2_from_Q,
                                 eta2_from_deff, interaction_density_3wm,
                                 interaction_density_4wm, miller_Q,
                                 peak_field_from_power, peak_intensity,
                                 power_sweep, q_eff_from_deff, q_eff_from_eta2,
                                 second_order_photoelasticity,
                                 virtual_photoelasticity)
from transduce.units import EPS0

from conftest import make_material

finite = st.floats(allow_nan=False, allow_infinity=False)


class TestMixingBands:
    def test_energy_conservation_by_construction(self):
        b = MixingBands(omega_p1=1.0e15, omega_p2=0.9e15, omega_m=1.2e10)
        assert b.omega_t == b.omega_p1 + b.omega_p2 + b.omega_m

    def test_from_wavelengths(self):
        b = MixingBands.from_vacuum_wavelengths(2600e-9, 2600e-9, 2e9)
        lam_p1, lam_p2, lam_t = b.wavelengths
        assert lam_p1 == pytest.approx(2600e-9, rel=1e-12)
        assert lam_t == pytest.approx(1.29999e-6, rel=1e-4)   # just under 1300 nm

    def test_validation(self):
        with pytest.raises(ValueError):
            MixingBands(omega_p1=-1.0, omega_p2=1.0, omega_m=0.0)
        with pytest.raises(ValueError):
            MixingBands(omega_p1=1.0, omega_p2=1.0, omega_m=0.0, axes=(0, 1, 5))
        with pytest.raises(ValueError):
            MixingBands(omega_p1=1.0, omega_p2=1.0, omega_m=0.0, strain_voigt=9)


class TestEta1:
    def test_vacuum(self):
        assert eta1_rel(1.0) == 1.0

    def test_direct_algebra(self):
        assert eta1_rel(2.27) == pytest.approx(1 / 2.27**2, rel=1e-15)
        assert eta1_rel(2.26) == pytest.approx(0.195787, rel=1e-5)

    def test_below_one_rejected(self):
        with pytest.raises(ValueError):
            eta1_rel(0.99)


class TestEta2AndMiller:
    def test_zero_deff(self):
        assert eta2_from_deff(0.0, 2.0, 2.0, 2.0) == 0.0

    def test_hand_evaluation(self):
        # 2e-11 / (eps0^2 * 2.26^2 * 2.26^2 * 2.27^2)
        got = eta2_from_deff(1e-11, 2.26, 2.26, 2.27)
        assert got == pytest.approx(2e-11 / (EPS0**2 * 134.4267), rel=1e-5)
        assert got == pytest.approx(1.898e9, rel=1e-3)

    def test_linearity(self):
        one = eta2_from_deff(1e-11, 2.26, 2.26, 2.27)
        two = eta2_from_deff(2e-11, 2.26, 2.26, 2.27)
        assert two == pytest.approx(2 * one, rel=1e-15)

    def test_miller_q_zero(self):
        assert miller_Q(0.0, 2.0, 2.0, 2.0) == 0.0

    def test_miller_q_hand_value(self):
        got = miller_Q(1.898e9, 2.26, 2.26, 2.27)
        assert got == pytest.approx(-1.898e9 / 0.5212455, rel=1e-6)
        assert got == pytest.approx(-3.64e9, rel=1e-3)

    def test_vacuum_band_is_singular(self):
        with pytest.raises(SingularityError):
            miller_Q(1.0, 1.0, 2.0, 2.0)

    @given(st.floats(1e6, 1e12), st.floats(1.1, 3.5), st.floats(1.1, 3.5),
           st.floats(1.1, 3.5))
    def test_roundtrip_eta2_Q(self, eta2, n1, n2, n3):
        back = eta2_from_Q(miller_Q(eta2, n1, n2, n3), n1, n2, n3)
        assert back == pytest.approx(eta2, rel=1e-12)


class TestSecondOrderPhotoelasticity:
    def test_golden_batio3(self, bto, bto_bands):
        chain = second_order_photoelasticity(bto, bto_bands)
        assert abs(chain.q_eff) == pytest.approx(2.45e-2, rel=0.02)
        assert chain.q_eff < 0          # sign per the closed form
        assert chain.n_bands == (2.26, 2.26, 2.27)
        assert chain.p_entries == (0.2, 0.2, 0.77)
        assert chain.eta2 == pytest.approx(1.898e9, rel=1e-3)
        assert chain.Q == pytest.approx(-3.64e9, rel=1e-3)

    def test_zero_deff_material(self, bto_bands):
        m = make_material(d_eff=0.0)
        assert second_order_photoelasticity(m, bto_bands).q_eff == 0.0

    def test_zero_p_entries(self, bto_bands):
        m = make_material(p_entries={})
        assert second_order_photoelasticity(m, bto_bands).q_eff == 0.0

    def test_missing_p_entry_names_it(self, bto_bands):
        m = make_material(p_entries={(2, 2): math.nan})
        with pytest.raises(DataError, match=r"\[2\]\[2\]"):
            second_order_photoelasticity(m, bto_bands)

    def test_qpm_reduction_only_on_request(self, bto, bto_bands):
        plain = second_order_photoelasticity(bto, bto_bands)
        poled = second_order_photoelasticity(bto, bto_bands, apply_qpm_reduction=True)
        assert poled.d_eff == pytest.approx(plain.d_eff * 2 / math.pi, rel=1e-15)
        assert poled.q_eff == pytest.approx(plain.q_eff * 2 / math.pi, rel=1e-12)

    def test_monotone_in_each_p_entry(self, bto_bands):
        base = make_material()
        q0 = abs(second_order_photoelasticity(base, bto_bands).q_eff)
        for idx in ((0, 2), (1, 2), (2, 2)):
            entries = {(0, 2): 0.2, (1, 2): 0.2, (2, 2): 0.77}
            entries[idx] = entries[idx] * 1.1
            bumped = make_material(p_entries=entries)
            assert abs(second_order_photoelasticity(bumped, bto_bands).q_eff) > q0


class TestRouteEquivalence:
    @given(st.floats(0, 1e-10), st.floats(1.1, 3.5), st.floats(1.1, 3.5),
           st.floats(1.1, 3.5), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
    @settings(max_examples=200)
    def test_eq11_route_equals_eq12_route(self, d_eff, n1, n2, n3, p1, p2, p3):
        ns, ps = (n1, n2, n3), (p1, p2, p3)
        via_eta2 = q_eff_from_eta2(eta2_from_deff(d_eff, *ns), ns, ps)
        closed = q_eff_from_deff(d_eff, ns, ps)
        assert via_eta2 == pytest.approx(closed, rel=1e-12, abs=1e-300)


class TestFieldAndIntensity:
    def test_golden_field(self):
        E = peak_field_from_power(PumpGeometry(1e-3, 1.2e-6, 2.26))
        assert E == pytest.approx(7.68e5, rel=0.01)

    def test_zero_power(self):
        assert peak_field_from_power(PumpGeometry(0.0, 1.2e-6, 2.26)) == 0.0

    def test_sqrt_scaling(self):
        e1 = peak_field_from_power(PumpGeometry(0.25, 1.2e-6, 2.26))
        e4 = peak_field_from_power(PumpGeometry(1.0, 1.2e-6, 2.26))
        assert e4 == pytest.approx(2 * e1, rel=1e-12)

    def test_golden_intensity(self):
        i = peak_intensity(1e-3, 1.2e-6)
        assert i == pytest.approx(88.4e3 * 1e4, rel=0.01)   # 88.4 kW/cm^2 in W/m^2

    def test_intensity_trivials(self):
        assert peak_intensity(0.0, 1.2e-6) == 0.0
        assert peak_intensity(1.0, 2.4e-6) == pytest.approx(
            peak_intensity(1.0, 1.2e-6) / 4, rel=1e-12)

    def test_golden_damage_limited_power(self, bto):
        assert damage_limited_power(bto, 1.2e-6) == pytest.approx(6.11, rel=0.02)

    def test_damage_scalings(self, bto):
        assert damage_limited_power(bto, 2.4e-6) == pytest.approx(
            4 * damage_limited_power(bto, 1.2e-6), rel=1e-12)
        zero = make_material(damage=1e-30)
        assert damage_limited_power(zero, 1.2e-6) == pytest.approx(0.0, abs=1e-35)

    def test_geometry_validation(self):
        with pytest.raises(ValueError):
            PumpGeometry(-1.0, 1.2e-6, 2.26)
        with pytest.raises(ValueError):
            PumpGeometry(1.0, 0.0, 2.26)


class TestVirtualPhotoelasticity:
    def test_golden_coefficient(self):
        assert virtual_photoelasticity(2.45e-2, 5.09, 1.0) == pytest.approx(
            7.35e-13, rel=0.02)

    def test_zero_field(self):
        assert virtual_photoelasticity(2.45e-2, 5.09, 0.0) == 0.0

    def test_negative_field_rejected(self):
        with pytest.raises(ValueError):
            virtual_photoelasticity(2.45e-2, 5.09, -1.0)

    def test_golden_power_law(self, bto, bto_bands):
        chain = second_order_photoelasticity(bto, bto_bands)
        for p_w in (1e-3, 0.1, 1.0, 6.0):
            E = peak_field_from_power(PumpGeometry(p_w, 1.2e-6, 2.26))
            p_virt = virtual_photoelasticity(chain.q_eff, 5.09, E)
            assert abs(p_virt) == pytest.approx(1.787e-5 * math.sqrt(p_w), rel=0.02)

    def test_strictly_increasing_in_power(self, bto, bto_bands):
        chain = second_order_photoelasticity(bto, bto_bands)
        vals = []
        for p_w in np.linspace(1e-3, 6.0, 50):
            E = peak_field_from_power(PumpGeometry(p_w, 1.2e-6, 2.26))
            vals.append(abs(virtual_photoelasticity(chain.q_eff, 5.09, E)))
        assert np.all(np.diff(vals) > 0)


class TestInteractionDensities:
    def test_zero_fields(self):
        assert interaction_density_3wm(0.77, 0.0, 1e-6, 1e-5) == 0.0
        assert interaction_density_4wm(2.45e-2, 1e-6, 0.0, 1e-6, 1e-5) == 0.0

    def test_hand_evaluation_3wm(self):
        got = interaction_density_3wm(0.77, 1e-6, 1e-6, 1e-5)
        assert got == pytest.approx(0.77e-17 / (2 * EPS0), rel=1e-15)
        assert got == pytest.approx(4.35e-7, rel=1e-3)

    @given(st.floats(-1e-3, 1e-3), st.floats(-1e-3, 1e-3))
    def test_bilinear_3wm(self, a, b):
        base = interaction_density_3wm(0.5, 1e-6, 2e-6, 1e-5)
        scaled = interaction_density_3wm(0.5, a * 1e-6, b * 2e-6, 1e-5)
        assert scaled == pytest.approx(a * b * base, rel=1e-12, abs=1e-300)

    @given(st.floats(-1e2, 1e2), st.floats(-1e-3, 1e-3), st.floats(-1e-3, 1e-3),
           st.floats(-1e-3, 1e-3), st.floats(-1e-6, 1e-6))
    @settings(max_examples=300)
    def test_reduction_identity(self, q, dp, d1, d2, x):
        u4 = interaction_density_4wm(q, dp, d1, d2, x)
        u3 = interaction_density_3wm(2.0 / 3.0 * q * dp, d1, d2, x)
        assert u4 == pytest.approx(u3, rel=1e-12, abs=1e-300)


class TestPowerSweep:
    def test_single_point_reproduces_goldens(self, bto, bto_bands):
        report = power_sweep(bto, bto_bands, [1e-3], 1.2e-6, 2.26)
        row = report.rows[0]
        assert row.peak_field_v_per_m == pytest.approx(7.68e5, rel=0.01)
        assert row.intensity_w_per_m2 == pytest.approx(8.84e8, rel=0.01)
        assert abs(row.p_virt) == pytest.approx(5.65e-7, rel=0.02)
        assert report.p_nominal == 0.77
        assert row.p_virt_over_p_nominal == pytest.approx(abs(row.p_virt) / 0.77,
                                                          rel=1e-15)
        assert row.g_scaled_rad_per_s == pytest.approx(
            PIEZO_OPTOMECHANICAL_BENCHMARK.g0_ref * row.p_virt_over_p_nominal,
            rel=1e-15)

    def test_zero_power_row(self, bto, bto_bands):
        row = power_sweep(bto, bto_bands, [0.0], 1.2e-6, 2.26).rows[0]
        assert row.peak_field_v_per_m == 0.0
        assert row.intensity_w_per_m2 == 0.0
        assert row.p_virt == 0.0
        assert row.g_scaled_rad_per_s == 0.0

    def test_sqrt_power_fit_exponent(self, bto, bto_bands):
        powers = np.geomspace(1e-3, 6.0, 40)
        report = power_sweep(bto, bto_bands, powers, 1.2e-6, 2.26)
        p_virt = np.array([abs(r.p_virt) for r in report.rows])
        exponent = np.polyfit(np.log(powers), np.log(p_virt), 1)[0]
        assert exponent == pytest.approx(0.5, abs=1e-6)

    def test_monotone_columns(self, bto, bto_bands):
        powers = np.linspace(0.0, 6.0, 25)
        rows = power_sweep(bto, bto_bands, powers, 1.2e-6, 2.26).rows
        for col in ("peak_field_v_per_m", "intensity_w_per_m2",
                    "p_virt_over_p_nominal", "intensity_over_threshold",
                    "g_scaled_rad_per_s"):
            vals = [getattr(r, col) for r in rows]
            assert all(b >= a for a, b in zip(vals, vals[1:])), col

    def test_empty_grid_rejected(self, bto, bto_bands):
        with pytest.raises(ValueError, match="empty"):
            power_sweep(bto, bto_bands, [], 1.2e-6, 2.26)

    def test_grid_beyond_ten_damage_limits_rejected(self, bto, bto_bands):
        with pytest.raises(ValueError, match="power grid"):
            power_sweep(bto, bto_bands, [100.0], 1.2e-6, 2.26)

    def test_csv_contract(self, bto, bto_bands):
        report = power_sweep(bto, bto_bands, [1e-3, 1.0], 1.2e-6, 2.26)
        lines = report.to_csv().strip().splitlines()
        assert lines[0] == SWEEP_CSV_HEADER
        assert len(lines) == 3
        first = [float(v) for v in lines[1].split(",")]
        assert first[0] == 1e-3
        assert first[1] == report.rows[0].peak_field_v_per_m   # full precision

    def test_structured_text_round_trips_through_json(self, bto, bto_bands):
        import json
        report = power_sweep(bto, bto_bands, [1e-3], 1.2e-6, 2.26)
        doc = json.loads(json.dumps(report.to_dict()))
        assert doc["material"] == "BaTiO3"
        assert doc["chain"]["q_eff_m2_per_c"] == report.chain.q_eff
        assert doc["rows"][0]["p_virt"] == report.rows[0].p_virt
        assert any("extrapolat" in n for n in doc["notes"])
