import numpy as np
import pytest

from transduce import MixingBands, default_db
from transduce.materials import DispersionModel, Material
from transduce.tensors import PhotoelasticTensor


@pytest.fixture(scope="session")
def db():
    return default_db()


@pytest.fixture(scope="session")
def bto(db):
    return db.get("BaTiO3")


@pytest.fixture
def bto_bands():
    """Both pumps at 2600 nm, 2 GHz phonon, standard axes and strain column."""
    return MixingBands.from_vacuum_wavelengths(2600e-9, 2600e-9, 2e9)


def make_material(name="fix", n_points=((1.0e-6, 2.0), (3.0e-6, 2.0)),
                  valid=(0.5e-6, 3.5e-6), p_entries=None, d_eff=1e-11,
                  eps_r=(5.0, 5.0, 5.0), v_sound=None, damage=5.4e12,
                  qpm_order=1):
    """Synthetic tabulated-dispersion material for fixture sweeps."""
    pts = np.array([[lam, n, n, n] for lam, n in n_points])
    p = np.zeros((6, 6))
    if p_entries is None:
        p[0, 2] = p[1, 2] = 0.2
        p[2, 2] = 0.77
    else:
        for (i, j), val in p_entries.items():
            p[i, j] = val
    return Material(
        name=name,
        dispersion=DispersionModel(kind="tabulated-points",
                                   valid_range_m=valid, points=pts),
        photoelastic=PhotoelasticTensor(p),
        photoelastic_note="synthetic fixture",
        d_eff=d_eff,
        eps_r=tuple(eps_r),
        v_sound=v_sound if v_sound is not None else {"longitudinal": 5000.0},
        damage_threshold=damage,
        qpm_order=qpm_order,
    )
