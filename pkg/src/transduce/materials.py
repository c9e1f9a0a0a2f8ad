"""Material database: dispersion, photoelasticity, nonlinearity, acoustics.

Databases are JSON files (schema version 1, SI units only) holding one entry
per material.  A bundled default database ships with the package; it contains
a barium titanate entry built from point values quoted in the literature
(n at 1310 nm and 2600 nm, d_eff of 10 pm/V from SHG, photoelastic entries
measured at 633 nm, a 0.54 GW/cm^2 damage threshold) plus a vacuum entry used
for calibration tests.  The BaTiO3 dispersion is stored as the two cited
table points with a declared validity window rather than as an invented
Sellmeier fit; interpolation between points is piecewise linear and queries
between a window edge and the outermost point clamp to that point's value so
interpolated indices never leave the tabulated range.

File schema (all numbers SI):

    {"schema": 1, "materials": [
        {"name": str,
         "dispersion": {"kind": "tabulated-points" | "sellmeier",
                        "points": [[lambda_m, n_x, n_y, n_z], ...]
                        | "sellmeier": [[[B, C_m2], ...] x 3 axes],
                        "valid_range_m": [lo, hi]},
         "photoelastic": {"entries": [[... 6x6 ...]], "note": str},
         "d_eff_m_per_v": float,
         "eps_r": [e1, e2, e3],
         "v_sound_m_per_s": {"<mode>": v, ...},
         "damage_threshold_w_per_m2": float,
         "qpm_order": int (optional, default 1)}, ...]}

Unit bookkeeping lives in the key names; the loader rejects unknown or
missing keys by name, which is what "units validated on load" means here.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from .errors import MaterialFileError, RangeError
from .tensors import PhotoelasticTensor

SCHEMA_VERSION = 1
_N_VALIDATION_SAMPLES = 64


@dataclass(frozen=True)
class DispersionModel:
    """Refractive index vs. vacuum wavelength, per principal axis.

    ``kind`` is ``"tabulated-points"`` (rows of wavelength plus n for the
    three axes, strictly increasing in wavelength) or ``"sellmeier"``
    (per-axis term lists ``[B, C]`` for n^2 = 1 + sum B lam^2/(lam^2 - C),
    wavelengths and C in SI).  ``valid_range_m`` bounds all queries.
    """

    kind: str
    valid_range_m: tuple[float, float]
    points: np.ndarray | None = None          # shape (npts, 4)
    sellmeier: tuple[tuple[tuple[float, float], ...], ...] | None = None

    def index(self, wavelength: float, axis: int) -> float:
        if axis not in (0, 1, 2):
            raise ValueError(f"axis must be 0..2, got {axis}")
        lo, hi = self.valid_range_m
        if not (lo <= wavelength <= hi):
            raise RangeError(
                f"wavelength {wavelength:.6g} m outside declared validity "
                f"range [{lo:.6g}, {hi:.6g}] m", lo=lo, hi=hi)
        if self.kind == "tabulated-points":
            lams = self.points[:, 0]
            ns = self.points[:, 1 + axis]
            # np.interp clamps to the end values outside the table, which is
            # the documented behaviour inside the validity window.
            return float(np.interp(wavelength, lams, ns))
        return self._sellmeier_index(wavelength, axis)

    def _sellmeier_index(self, wavelength: float, axis: int) -> float:
        n2 = 1.0
        lam2 = wavelength * wavelength
        for b, c in self.sellmeier[axis]:
            n2 += b * lam2 / (lam2 - c)
        if n2 < 0:
            raise RangeError(
                f"Sellmeier n^2 negative at {wavelength:.6g} m (pole inside "
                "validity range?)", lo=self.valid_range_m[0],
                hi=self.valid_range_m[1])
        return math.sqrt(n2)


@dataclass(frozen=True)
class Material:
    """One optical material with everything the estimation chain consumes."""

    name: str
    dispersion: DispersionModel
    photoelastic: PhotoelasticTensor
    photoelastic_note: str
    d_eff: float                      # m/V, sign allowed
    eps_r: tuple[float, float, float]
    v_sound: dict[str, float]         # acoustic mode label -> m/s
    damage_threshold: float           # W/m^2
    qpm_order: int = 1


@dataclass(frozen=True)
class MaterialDb:
    """Immutable name -> Material map loaded from one schema-1 file."""

    materials: dict[str, Material]
    source_version: str = "1"

    def get(self, name: str) -> Material:
        try:
            return self.materials[name]
        except KeyError:
            known = ", ".join(sorted(self.materials)) or "<empty db>"
            raise MaterialFileError(
                f"material '{name}' not in database (have: {known})") from None

    def names(self) -> list[str]:
        return sorted(self.materials)


@dataclass(frozen=True)
class Violation:
    """Machine-readable invariant violation found by validate_material."""

    field: str
    rule: str
    value: Any


def refractive_index(m: Material, wavelength: float, axis: int = 2) -> float:
    """Refractive index of ``m`` at a vacuum wavelength (m), along ``axis``."""
    return m.dispersion.index(wavelength, axis)


def validate_material(m: Material) -> list[Violation]:
    """Check every material invariant; violations are data, not exceptions."""
    out: list[Violation] = []
    d = m.dispersion
    lo, hi = d.valid_range_m
    if not (math.isfinite(lo) and math.isfinite(hi) and 0 < lo < hi):
        out.append(Violation("dispersion.valid_range_m", "0 < lo < hi", (lo, hi)))
        return out
    if d.kind == "tabulated-points":
        lams = d.points[:, 0]
        if np.any(np.diff(lams) <= 0):
            out.append(Violation("dispersion.points", "wavelengths strictly increasing",
                                 lams.tolist()))
        if np.any(d.points[:, 1:] < 1.0):
            out.append(Violation("dispersion.points", "n >= 1", float(d.points[:, 1:].min())))
        if not np.all(np.isfinite(d.points)):
            out.append(Violation("dispersion.points", "finite", None))
    else:
        for axis in range(3):
            try:
                nmin = min(d.index(lam, axis) for lam in
                           np.linspace(lo, hi, _N_VALIDATION_SAMPLES))
            except RangeError:
                out.append(Violation("dispersion.sellmeier", "pole inside validity range", axis))
                continue
            if nmin < 1.0:
                out.append(Violation("dispersion.sellmeier", "n >= 1 over validity range",
                                     nmin))
    if not np.all(np.isfinite(m.photoelastic.entries)):
        out.append(Violation("photoelastic.entries", "finite 6x6", None))
    if not math.isfinite(m.d_eff):
        out.append(Violation("d_eff_m_per_v", "finite", m.d_eff))
    if len(m.eps_r) != 3 or any(not math.isfinite(e) or e <= 0 for e in m.eps_r):
        out.append(Violation("eps_r", "three positive finite entries", m.eps_r))
    for mode, v in m.v_sound.items():
        if not math.isfinite(v) or v <= 0:
            out.append(Violation(f"v_sound_m_per_s.{mode}", "positive finite", v))
    if not math.isfinite(m.damage_threshold) or m.damage_threshold <= 0:
        out.append(Violation("damage_threshold_w_per_m2", "positive", m.damage_threshold))
    if not isinstance(m.qpm_order, int) or m.qpm_order < 1:
        out.append(Violation("qpm_order", "integer >= 1", m.qpm_order))
    return out


# --------------------------------------------------------------------------
# JSON loading / serialization
# --------------------------------------------------------------------------

_MATERIAL_KEYS = {"name", "dispersion", "photoelastic", "d_eff_m_per_v",
                  "eps_r", "v_sound_m_per_s", "damage_threshold_w_per_m2",
                  "qpm_order"}
_REQUIRED_KEYS = _MATERIAL_KEYS - {"qpm_order"}


def _parse_dispersion(obj: dict, where: str) -> DispersionModel:
    kind = obj.get("kind")
    rng = obj.get("valid_range_m")
    if not (isinstance(rng, list) and len(rng) == 2):
        raise MaterialFileError(f"{where}: dispersion.valid_range_m must be [lo, hi]")
    if kind == "tabulated-points":
        pts = obj.get("points")
        if not pts:
            raise MaterialFileError(f"{where}: tabulated dispersion needs 'points'")
        arr = np.asarray(pts, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 4:
            raise MaterialFileError(
                f"{where}: dispersion points must be rows of [lambda_m, nx, ny, nz]")
        return DispersionModel(kind=kind, valid_range_m=(float(rng[0]), float(rng[1])),
                               points=arr)
    if kind == "sellmeier":
        terms = obj.get("sellmeier")
        if terms is None or len(terms) != 3:
            raise MaterialFileError(f"{where}: sellmeier dispersion needs 3 axis term lists")
        packed = tuple(tuple((float(b), float(c)) for b, c in axis_terms)
                       for axis_terms in terms)
        return DispersionModel(kind=kind, valid_range_m=(float(rng[0]), float(rng[1])),
                               sellmeier=packed)
    raise MaterialFileError(
        f"{where}: dispersion.kind must be 'tabulated-points' or 'sellmeier', got {kind!r}")


def _parse_material(obj: dict) -> Material:
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        raise MaterialFileError("material entry without a 'name'")
    where = f"material '{name}'"
    unknown = set(obj) - _MATERIAL_KEYS
    if unknown:
        raise MaterialFileError(f"{where}: unknown keys {sorted(unknown)} "
                                "(unit annotations are part of the key names)")
    missing = _REQUIRED_KEYS - set(obj)
    if missing:
        raise MaterialFileError(f"{where}: missing required keys {sorted(missing)}")

    dispersion = _parse_dispersion(obj["dispersion"], where)
    pe = obj["photoelastic"]
    entries = pe.get("entries")
    if entries is None:
        raise MaterialFileError(f"{where}: photoelastic.entries missing")
    # null entries mark unmeasured tensor elements; they surface as NaN and
    # raise a DataError only if the estimation chain actually needs them.
    arr = np.asarray([[math.nan if e is None else float(e) for e in row]
                      for row in entries], dtype=float)
    if arr.shape != (6, 6):
        raise MaterialFileError(f"{where}: photoelastic.entries must be 6x6")
    eps_r = obj["eps_r"]
    if not (isinstance(eps_r, list) and len(eps_r) == 3):
        raise MaterialFileError(f"{where}: eps_r must be a 3-vector diagonal")
    qpm = obj.get("qpm_order", 1)
    if not isinstance(qpm, int):
        raise MaterialFileError(f"{where}: qpm_order must be an integer")
    return Material(
        name=name,
        dispersion=dispersion,
        photoelastic=PhotoelasticTensor(arr),
        photoelastic_note=str(pe.get("note", "")),
        d_eff=float(obj["d_eff_m_per_v"]),
        eps_r=tuple(float(e) for e in eps_r),
        v_sound={str(k): float(v) for k, v in obj["v_sound_m_per_s"].items()},
        damage_threshold=float(obj["damage_threshold_w_per_m2"]),
        qpm_order=qpm,
    )


def loads_materials(text: str, source: str = "<string>") -> MaterialDb:
    """Parse and validate a schema-1 material database from JSON text."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MaterialFileError(f"{source}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA_VERSION:
        raise MaterialFileError(
            f"{source}: expected top level {{'schema': {SCHEMA_VERSION}, 'materials': [...]}}")
    mats: dict[str, Material] = {}
    for obj in doc.get("materials", []):
        m = _parse_material(obj)
        if m.name in mats:
            raise MaterialFileError(f"{source}: duplicate material name '{m.name}'")
        violations = validate_material(m)
        if violations:
            v = violations[0]
            raise MaterialFileError(
                f"{source}: material '{m.name}' invalid: {v.field} violates "
                f"'{v.rule}' (value {v.value!r})"
                + (f" and {len(violations) - 1} more" if len(violations) > 1 else ""))
        mats[m.name] = m
    return MaterialDb(materials=mats, source_version=str(SCHEMA_VERSION))


def load_materials(path: str | Path) -> MaterialDb:
    """Load a material database file; raises MaterialFileError on any defect."""
    p = Path(path)
    if not p.exists():
        raise MaterialFileError(f"material database not found: {p}")
    return loads_materials(p.read_text(encoding="utf-8"), source=str(p))


def _dispersion_to_dict(d: DispersionModel) -> dict:
    out: dict[str, Any] = {"kind": d.kind, "valid_range_m": list(d.valid_range_m)}
    if d.kind == "tabulated-points":
        out["points"] = [[float(v) for v in row] for row in d.points]
    else:
        out["sellmeier"] = [[[b, c] for b, c in axis] for axis in d.sellmeier]
    return out


def _material_to_dict(m: Material) -> dict:
    entries = [[None if math.isnan(e) else float(e) for e in row]
               for row in m.photoelastic.entries]
    return {
        "name": m.name,
        "dispersion": _dispersion_to_dict(m.dispersion),
        "photoelastic": {"entries": entries, "note": m.photoelastic_note},
        "d_eff_m_per_v": m.d_eff,
        "eps_r": list(m.eps_r),
        "v_sound_m_per_s": dict(m.v_sound),
        "damage_threshold_w_per_m2": m.damage_threshold,
        "qpm_order": m.qpm_order,
    }


def dumps_materials(db: MaterialDb) -> str:
    """Serialize a database to JSON; floats round-trip bit-exactly."""
    doc = {"schema": SCHEMA_VERSION,
           "materials": [_material_to_dict(m) for _, m in sorted(db.materials.items())]}
    return json.dumps(doc, indent=2)


def save_materials(db: MaterialDb, path: str | Path) -> None:
    Path(path).write_text(dumps_materials(db) + "\n", encoding="utf-8")


def default_db() -> MaterialDb:
    """The database bundled with the package (BaTiO3 fixture plus vacuum)."""
    text = resources.files("transduce").joinpath("data/materials.json").read_text("utf-8")
    return loads_materials(text, source="<bundled>")
