import json

import numpy as np
import pytest

from transduce.errors import MaterialFileError, RangeError
from transduce.materials import (dumps_materials, load_materials,
                                 loads_materials, refractive_index,
                                 save_materials, validate_material)

MINIMAL = {
    "schema": 1,
    "materials": [{
        "name": "demo",
        "dispersion": {"kind": "tabulated-points",
                       "points": [[1.0e-6, 1.5, 1.5, 1.5], [2.0e-6, 1.4, 1.4, 1.4]],
                       "valid_range_m": [0.9e-6, 2.1e-6]},
        "photoelastic": {"entries": [[0.0] * 6 for _ in range(6)], "note": ""},
        "d_eff_m_per_v": 1e-12,
        "eps_r": [2.0, 2.0, 2.0],
        "v_sound_m_per_s": {"longitudinal": 4000.0},
        "damage_threshold_w_per_m2": 1e12,
    }],
}


def _with(**patch):
    doc = json.loads(json.dumps(MINIMAL))
    doc["materials"][0].update(patch)
    return json.dumps(doc)


class TestLoad:
    def test_bundled_db_contains_batio3(self, db):
        assert "BaTiO3" in db.names()
        assert db.source_version == "1"

    def test_empty_material_list_is_fine(self):
        db = loads_materials('{"schema": 1, "materials": []}')
        assert db.names() == []

    def test_missing_file(self, tmp_path):
        with pytest.raises(MaterialFileError, match="not found"):
            load_materials(tmp_path / "nope.json")

    def test_malformed_json(self):
        with pytest.raises(MaterialFileError, match="not valid JSON"):
            loads_materials("{not json")

    def test_wrong_schema(self):
        with pytest.raises(MaterialFileError, match="schema"):
            loads_materials('{"schema": 2, "materials": []}')

    def test_negative_damage_threshold_names_the_field(self):
        with pytest.raises(MaterialFileError, match="damage_threshold_w_per_m2"):
            loads_materials(_with(damage_threshold_w_per_m2=-1.0))

    def test_non_increasing_wavelengths_rejected(self):
        bad = {"kind": "tabulated-points",
               "points": [[2.0e-6, 1.5, 1.5, 1.5], [1.0e-6, 1.4, 1.4, 1.4]],
               "valid_range_m": [0.9e-6, 2.1e-6]}
        with pytest.raises(MaterialFileError, match="strictly increasing"):
            loads_materials(_with(dispersion=bad))

    def test_unknown_key_rejected_by_name(self):
        with pytest.raises(MaterialFileError, match="d_eff_pm_per_v"):
            loads_materials(_with(d_eff_pm_per_v=10.0))

    def test_missing_key_rejected_by_name(self):
        doc = json.loads(json.dumps(MINIMAL))
        del doc["materials"][0]["eps_r"]
        with pytest.raises(MaterialFileError, match="eps_r"):
            loads_materials(json.dumps(doc))

    def test_duplicate_names_rejected(self):
        doc = json.loads(json.dumps(MINIMAL))
        doc["materials"].append(doc["materials"][0])
        with pytest.raises(MaterialFileError, match="duplicate"):
            loads_materials(json.dumps(doc))

    def test_unknown_material_lookup(self, db):
        with pytest.raises(MaterialFileError, match="Unobtainium"):
            db.get("Unobtainium")

    def test_qpm_order_defaults_to_one(self):
        db = loads_materials(json.dumps(MINIMAL))
        assert db.get("demo").qpm_order == 1


class TestRefractiveIndex:
    def test_batio3_cited_points(self, bto):
        assert refractive_index(bto, 1310e-9, axis=2) == pytest.approx(2.27, abs=0.01)
        assert refractive_index(bto, 2600e-9, axis=2) == pytest.approx(2.26, abs=0.01)

    def test_vacuum_is_exactly_one(self, db):
        vac = db.get("vacuum")
        for lam in (200e-9, 1310e-9, 2600e-9, 9e-6):
            assert refractive_index(vac, lam, axis=0) == 1.0

    def test_out_of_range_carries_interval(self, bto):
        with pytest.raises(RangeError) as exc:
            refractive_index(bto, 5e-6, axis=2)
        assert exc.value.lo == pytest.approx(1.2e-6)
        assert exc.value.hi == pytest.approx(2.7e-6)

    def test_interpolation_is_continuous_and_bounded(self, bto):
        lams = np.linspace(1.2e-6, 2.7e-6, 401)
        ns = np.array([refractive_index(bto, lam, axis=2) for lam in lams])
        assert np.all(ns >= 2.26) and np.all(ns <= 2.27)
        assert np.max(np.abs(np.diff(ns))) < 1e-4   # no jumps on a fine grid

    def test_clamped_extension_beyond_outermost_point(self, bto):
        # inside the validity window but short of the first table point
        assert refractive_index(bto, 1.25e-6, axis=2) == 2.27

    def test_bad_axis(self, bto):
        with pytest.raises(ValueError):
            refractive_index(bto, 1310e-9, axis=3)


class TestBundledFixture:
    """Every number of the bundled BaTiO3 entry, regression-pinned."""

    def test_dispersion_points(self, bto):
        assert bto.dispersion.kind == "tabulated-points"
        assert bto.dispersion.valid_range_m == (1.2e-6, 2.7e-6)
        np.testing.assert_array_equal(
            bto.dispersion.points,
            [[1.31e-6, 2.27, 2.27, 2.27], [2.6e-6, 2.26, 2.26, 2.26]])

    def test_photoelastic_entries(self, bto):
        e = bto.photoelastic.entries
        assert e[0, 2] == 0.2 and e[1, 2] == 0.2 and e[2, 2] == 0.77
        mask = np.ones((6, 6), dtype=bool)
        mask[0, 2] = mask[1, 2] = mask[2, 2] = False
        assert np.all(e[mask] == 0.0)
        assert "633" in bto.photoelastic_note

    def test_scalar_parameters(self, bto):
        assert bto.d_eff == 10e-12                   # 10 pm/V
        assert bto.eps_r == (5.09, 5.09, 5.09)
        assert bto.damage_threshold == 5.4e12        # 0.54 GW/cm^2 in W/m^2
        assert bto.v_sound == {"longitudinal": 5000.0}
        assert bto.qpm_order == 1


class TestValidate:
    def test_bundled_entries_are_valid(self, db):
        for name in db.names():
            assert validate_material(db.get(name)) == []

    def test_dip_below_one_is_one_violation(self):
        db = loads_materials(json.dumps(MINIMAL))
        m = db.get("demo")
        bad_points = m.dispersion.points.copy()
        bad_points[1, 1:] = 0.9
        from dataclasses import replace
        bad = replace(m, dispersion=replace(m.dispersion, points=bad_points))
        violations = validate_material(bad)
        assert len(violations) == 1
        assert violations[0].field == "dispersion.points"
        assert violations[0].rule == "n >= 1"

    def test_missing_v_sound_mode_is_not_a_validation_issue(self):
        db = loads_materials(_with(v_sound_m_per_s={}))
        assert validate_material(db.get("demo")) == []


class TestRoundTrip:
    def test_load_serialize_load_is_bit_exact(self, db):
        text = dumps_materials(db)
        db2 = loads_materials(text)
        assert db.names() == db2.names()
        for name in db.names():
            a, b = db.get(name), db2.get(name)
            assert a.d_eff == b.d_eff
            assert a.eps_r == b.eps_r
            assert a.damage_threshold == b.damage_threshold
            assert a.v_sound == b.v_sound
            assert a.qpm_order == b.qpm_order
            assert np.array_equal(a.photoelastic.entries, b.photoelastic.entries,
                                  equal_nan=True)
            assert a.dispersion.kind == b.dispersion.kind
            assert a.dispersion.valid_range_m == b.dispersion.valid_range_m
            if a.dispersion.points is not None:
                assert np.array_equal(a.dispersion.points, b.dispersion.points)
            else:
                assert a.dispersion.sellmeier == b.dispersion.sellmeier
        assert dumps_materials(db2) == text

    def test_save_and_reload(self, db, tmp_path):
        path = tmp_path / "db.json"
        save_materials(db, path)
        assert dumps_materials(load_materials(path)) == dumps_materials(db)


def test_sellmeier_evaluation_against_direct_formula():
    # one-term Sellmeier: n^2 = 1 + B lam^2 / (lam^2 - C)
    doc = json.loads(json.dumps(MINIMAL))
    doc["materials"][0]["dispersion"] = {
        "kind": "sellmeier",
        "sellmeier": [[[1.0, 1e-14]], [[1.0, 1e-14]], [[1.0, 1e-14]]],
        "valid_range_m": [0.5e-6, 2.0e-6]}
    db = loads_materials(json.dumps(doc))
    lam = 1.0e-6
    expected = np.sqrt(1 + 1.0 * lam**2 / (lam**2 - 1e-14))
    assert refractive_index(db.get("demo"), lam, 0) == pytest.approx(expected, rel=1e-15)
