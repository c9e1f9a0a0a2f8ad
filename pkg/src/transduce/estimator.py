"""Estimation chain for the four-wave-mixing optomechanical coupling.

The chain goes: tabulated linear optics and d_eff -> second-order inverse
susceptibility -> Miller proportionality constant -> effective second-order
photoelasticity q_eff (m^2/C) -> virtual first-order photoelasticity p_virt
obtained by contracting q_eff with the classical pump field.  Two algebraic
routes to q_eff exist and must agree to machine precision:

* the susceptibility route,  q = -eps0 * eta2 * sum_n p_n / (1 - eps0*eta1_n)
* the closed form,           q = -(2 d_eff / (eps0 n1^2 n2^2 n3^2))
                                  * sum_n p_n / (1 - 1/n_n^2)

with eps0*eta1_n = 1/n_n^2 per band.  Signs follow the closed form: positive
d_eff and p entries give a negative q_eff; reports carry the signed value and
regression tests compare magnitudes.

Pump-power bookkeeping uses the average-peak-field relation
|E| = sqrt(16 P / (n pi eps0 c MFD^2)) and the top-hat intensity convention
I = P / (pi (MFD/2)^2), which is the convention that reproduces the
88.4 kW/cm^2 benchmark at 1 mW through a 1.2 um mode-field diameter (the
Gaussian peak convention 2P/(pi w^2) would be a factor 2 higher).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, SingularityError
from .materials import Material, refractive_index
from .tensors import voigt_index
from .units import (C_LIGHT, C_LIGHT_Q, DIMENSIONLESS, EPS0_Q,
                    COULOMB_PER_M2, JOULE_PER_M3, M2_PER_COULOMB,
                    METER, METER_PER_VOLT, Quantity,
                    VOLT_PER_METER, WATT, WATT_PER_M2, ETA2)

TWO_PI = 2.0 * math.pi

# Published single-photon optomechanical coupling rates used as proportional-
# scaling anchors by power_sweep.  These are literature reference points, not
# outputs of this package; any column derived from them is an extrapolation.
G0_PIEZO_OPTOMECHANICAL_RAD_S = TWO_PI * 400.0      # integrated piezo-optomechanical transducer
G0_OPTOMECHANICAL_CRYSTAL_RAD_S = TWO_PI * 850.0e3  # high-coupling optomechanical crystal


@dataclass(frozen=True)
class MixingBands:
    """The three optical bands and one acoustic band of the mixing process.

    Energy conservation fixes omega_t = omega_p1 + omega_p2 + omega_m; the
    constructor computes it rather than trusting a caller-supplied value.
    ``axes`` gives the polarization axis (0..2) of each band in the order
    (pump1, pump2, transduced); ``acoustic_mode`` keys the material's sound
    speed table and ``strain_voigt`` selects the strain column of the
    photoelastic tensors driven by that mode.
    """

    omega_p1: float
    omega_p2: float
    omega_m: float
    axes: tuple[int, int, int] = (0, 1, 2)
    acoustic_mode: str = "longitudinal"
    strain_voigt: int = 2
    omega_t: float = field(init=False)

    def __post_init__(self):
        if min(self.omega_p1, self.omega_p2) <= 0 or self.omega_m < 0:
            raise ValueError("pump frequencies must be positive, omega_m >= 0")
        if len(self.axes) != 3 or any(a not in (0, 1, 2) for a in self.axes):
            raise ValueError(f"axes must be three indices in 0..2, got {self.axes}")
        if self.strain_voigt not in range(6):
            raise ValueError(f"strain_voigt must be in 0..5, got {self.strain_voigt}")
        object.__setattr__(self, "axes", tuple(self.axes))
        object.__setattr__(self, "omega_t",
                           self.omega_p1 + self.omega_p2 + self.omega_m)

    @classmethod
    def from_vacuum_wavelengths(cls, lambda_p1: float, lambda_p2: float,
                                phonon_hz: float, **kw) -> "MixingBands":
        """Build from pump vacuum wavelengths (m) and a phonon frequency (Hz)."""
        return cls(TWO_PI * C_LIGHT / lambda_p1, TWO_PI * C_LIGHT / lambda_p2,
                   TWO_PI * phonon_hz, **kw)

    @property
    def omegas_optical(self) -> tuple[float, float, float]:
        return (self.omega_p1, self.omega_p2, self.omega_t)

    @property
    def wavelengths(self) -> tuple[float, float, float]:
        """Vacuum wavelengths (m) of (pump1, pump2, transduced)."""
        return tuple(TWO_PI * C_LIGHT / w for w in self.omegas_optical)


@dataclass(frozen=True)
class MillerChain:
    """Every intermediate of the q_eff estimate, for reporting and audits."""

    n_bands: tuple[float, float, float]
    p_entries: tuple[float, float, float]
    d_eff: float
    eta1_rel_bands: tuple[float, float, float]
    eta2: float
    Q: float
    q_eff: float


@dataclass(frozen=True)
class PumpGeometry:
    """Guided pump: power (W), mode-field diameter (m), modal index."""

    power: float
    mfd: float
    n_mode: float

    def __post_init__(self):
        if not (self.power >= 0 and math.isfinite(self.power)):
            raise ValueError(f"power must be finite and >= 0, got {self.power}")
        if not (self.mfd > 0 and math.isfinite(self.mfd)):
            raise ValueError(f"mode-field diameter must be positive, got {self.mfd}")
        if not (self.n_mode > 0 and math.isfinite(self.n_mode)):
            raise ValueError(f"modal index must be positive, got {self.n_mode}")


@dataclass(frozen=True)
class CouplingBenchmark:
    """A published coupling rate against which scalings are expressed."""

    g0_ref: float   # rad/s
    label: str

    def __post_init__(self):
        if not (self.g0_ref > 0 and math.isfinite(self.g0_ref)):
            raise ValueError(f"g0_ref must be positive, got {self.g0_ref}")


PIEZO_OPTOMECHANICAL_BENCHMARK = CouplingBenchmark(
    G0_PIEZO_OPTOMECHANICAL_RAD_S,
    "integrated piezo-optomechanical transducer, 2pi x 400 Hz (literature)")
OPTOMECHANICAL_CRYSTAL_BENCHMARK = CouplingBenchmark(
    G0_OPTOMECHANICAL_CRYSTAL_RAD_S,
    "optomechanical crystal device, 2pi x 850 kHz (literature)")


def eta1_rel(n: float) -> float:
    """Relative first-order inverse susceptibility eps0*eta1 = 1/n^2."""
    if not n >= 1.0:
        raise ValueError(f"refractive index must be >= 1, got {n}")
    return 1.0 / (n * n)


def eta2_from_deff(d_eff: float, n1: float, n2: float, n3: float) -> float:
    """Second-order inverse susceptibility from the tabulated d_eff.

    eta2 = 2 d_eff / (eps0^2 n1^2 n2^2 n3^2); linear in d_eff.
    """
    if not math.isfinite(d_eff):
        raise ValueError("d_eff must be finite")
    for n in (n1, n2, n3):
        if not n >= 1.0:
            raise ValueError(f"refractive index must be >= 1, got {n}")
    q = (2.0 * Quantity(d_eff, METER_PER_VOLT)) / (
        EPS0_Q * EPS0_Q * (n1 * n1 * n2 * n2 * n3 * n3))
    return q.expect(ETA2, "eta2")


def miller_Q(eta2: float, n1: float, n2: float, n3: float) -> float:
    """Miller proportionality constant Q = -eta2 / prod(1 - 1/n^2)."""
    prod = 1.0
    for n in (n1, n2, n3):
        if n == 1.0:
            raise SingularityError(
                "Miller constant is singular for a vacuum band (n = 1)")
        if not n > 1.0:
            raise ValueError(f"refractive index must be > 1, got {n}")
        prod *= 1.0 - eta1_rel(n)
    return -eta2 / prod


def eta2_from_Q(Q: float, n1: float, n2: float, n3: float) -> float:
    """Inverse of miller_Q; round-trips to machine precision."""
    prod = 1.0
    for n in (n1, n2, n3):
        prod *= 1.0 - eta1_rel(n)
    return -Q * prod


def q_eff_from_eta2(eta2: float, ns: tuple[float, float, float],
                    ps: tuple[float, float, float]) -> float:
    """Susceptibility route: q = -eps0 * eta2 * sum_n p_n / (1 - eps0*eta1_n)."""
    s = sum(p / (1.0 - eta1_rel(n)) for p, n in zip(ps, ns))
    q = -(EPS0_Q * Quantity(eta2, ETA2)) * s
    return q.expect(M2_PER_COULOMB, "q_eff")


def q_eff_from_deff(d_eff: float, ns: tuple[float, float, float],
                    ps: tuple[float, float, float]) -> float:
    """Closed form: q = -(2 d_eff/(eps0 n1^2 n2^2 n3^2)) sum_n p_n/(1 - 1/n_n^2)."""
    n1, n2, n3 = ns
    s = sum(p / (1.0 - eta1_rel(n)) for p, n in zip(ps, ns))
    q = -(2.0 * Quantity(d_eff, METER_PER_VOLT)) / (
        EPS0_Q * (n1 * n1 * n2 * n2 * n3 * n3)) * s
    return q.expect(M2_PER_COULOMB, "q_eff")


def qpm_deff_reduction(order: int) -> float:
    """Nominal-to-effective d_eff factor 2/(order*pi) under periodic poling."""
    if order < 1:
        raise ValueError(f"poling diffraction order must be >= 1, got {order}")
    return 2.0 / (order * math.pi)


def second_order_photoelasticity(m: Material, bands: MixingBands,
                                 apply_qpm_reduction: bool = False) -> MillerChain:
    """Run the full Miller's-rule chain for ``m`` on the given bands.

    Looks up the refractive index of each band at its polarization axis, the
    photoelastic entry p[axis, axis; strain] for each band, and the material
    d_eff (reduced by 2/(qpm_order*pi) only when a poling grating is actually
    in use, i.e. ``apply_qpm_reduction=True``).  Raises DataError if a needed
    photoelastic entry is unmeasured (stored null).
    """
    ns = tuple(refractive_index(m, lam, axis)
               for lam, axis in zip(bands.wavelengths, bands.axes))
    ps = []
    for axis in bands.axes:
        v = voigt_index(axis, axis)
        entry = float(m.photoelastic.entries[v, bands.strain_voigt])
        if math.isnan(entry):
            raise DataError(
                f"material '{m.name}' has no photoelastic entry "
                f"[{v}][{bands.strain_voigt}] (axis {axis}, strain column "
                f"{bands.strain_voigt}) required by these bands")
        ps.append(entry)
    ps = tuple(ps)
    d_eff = m.d_eff * (qpm_deff_reduction(m.qpm_order) if apply_qpm_reduction else 1.0)
    eta2 = eta2_from_deff(d_eff, *ns)
    return MillerChain(
        n_bands=ns,
        p_entries=ps,
        d_eff=d_eff,
        eta1_rel_bands=tuple(eta1_rel(n) for n in ns),
        eta2=eta2,
        Q=miller_Q(eta2, *ns),
        q_eff=q_eff_from_deff(d_eff, ns, ps),
    )


def peak_field_from_power(g: PumpGeometry) -> float:
    """Average peak field |E| = sqrt(16 P / (n pi eps0 c MFD^2)), in V/m."""
    e2 = (16.0 * Quantity(g.power, WATT)) / (
        g.n_mode * math.pi * EPS0_Q * C_LIGHT_Q
        * Quantity(g.mfd, METER) * Quantity(g.mfd, METER))
    return e2.sqrt().expect(VOLT_PER_METER, "peak field")


def peak_intensity(power: float, mfd: float) -> float:
    """Top-hat intensity P / (pi (MFD/2)^2), in W/m^2."""
    if power < 0:
        raise ValueError(f"power must be >= 0, got {power}")
    if not mfd > 0:
        raise ValueError(f"mode-field diameter must be positive, got {mfd}")
    area = math.pi * (mfd / 2.0) ** 2
    return (Quantity(power, WATT) / Quantity(area, METER * METER)
            ).expect(WATT_PER_M2, "intensity")


def damage_limited_power(m: Material, mfd: float) -> float:
    """Largest power (W) keeping the peak intensity at the damage threshold."""
    if not mfd > 0:
        raise ValueError(f"mode-field diameter must be positive, got {mfd}")
    area = math.pi * (mfd / 2.0) ** 2
    return (Quantity(m.damage_threshold, WATT_PER_M2)
            * Quantity(area, METER * METER)).expect(WATT, "power")


def virtual_photoelasticity(q_eff: float, eps_r: float, field: float) -> float:
    """Virtual first-order photoelasticity p_virt = (2/3) eps0 q_eff eps_r |E|.

    ``field`` is the pump field magnitude (V/m, >= 0); the result is
    dimensionless and carries the sign of q_eff.
    """
    if field < 0:
        raise ValueError(f"field magnitude must be >= 0, got {field}")
    p = ((2.0 / 3.0) * EPS0_Q * Quantity(q_eff, M2_PER_COULOMB)
         * eps_r * Quantity(field, VOLT_PER_METER))
    return p.expect(DIMENSIONLESS, "virtual photoelasticity")


def interaction_density_3wm(p_eff: float, d1: float, d2: float, x: float) -> float:
    """Three-wave interaction energy density (1/(2 eps0)) p d1 d2 x, J/m^3."""
    u = (Quantity(p_eff, DIMENSIONLESS) * Quantity(d1, COULOMB_PER_M2)
         * Quantity(d2, COULOMB_PER_M2) * Quantity(x, DIMENSIONLESS)
         / (2.0 * EPS0_Q))
    return u.expect(JOULE_PER_M3, "interaction density")


def interaction_density_4wm(q_eff: float, dp: float, d1: float, d2: float,
                            x: float) -> float:
    """Four-wave interaction energy density (1/(3 eps0)) q dp d1 d2 x, J/m^3.

    Grouping the pump displacement with q reduces this to the three-wave form:
    interaction_density_4wm(q, dp, d1, d2, x)
        == interaction_density_3wm((2/3) q dp, d1, d2, x)
    exactly, which is the algebraic content of the virtual photoelasticity.
    """
    u = (Quantity(q_eff, M2_PER_COULOMB) * Quantity(dp, COULOMB_PER_M2)
         * Quantity(d1, COULOMB_PER_M2) * Quantity(d2, COULOMB_PER_M2)
         * Quantity(x, DIMENSIONLESS) / (3.0 * EPS0_Q))
    return u.expect(JOULE_PER_M3, "interaction density")


@dataclass(frozen=True)
class SweepRow:
    """One power grid point of a pump sweep (all SI)."""

    power_w: float
    peak_field_v_per_m: float
    intensity_w_per_m2: float
    p_virt: float
    p_virt_over_p_nominal: float
    intensity_over_threshold: float
    g_scaled_rad_per_s: float


SWEEP_CSV_HEADER = ("power_w,peak_field_v_per_m,intensity_w_per_m2,p_virt,"
                    "p_virt_over_p_nominal,intensity_over_threshold,"
                    "g_scaled_extrapolated_rad_per_s")


@dataclass(frozen=True)
class DesignReport:
    """Sweep output bundle: chain, rows, and the caveats that qualify them."""

    material: str
    chain: MillerChain
    p_nominal: float
    benchmark: CouplingBenchmark
    rows: tuple[SweepRow, ...]
    notes: tuple[str, ...]

    def to_csv(self) -> str:
        lines = [SWEEP_CSV_HEADER]
        for r in self.rows:
            lines.append(",".join(repr(v) for v in (
                r.power_w, r.peak_field_v_per_m, r.intensity_w_per_m2,
                r.p_virt, r.p_virt_over_p_nominal, r.intensity_over_threshold,
                r.g_scaled_rad_per_s)))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        """JSON-ready structure carrying the chain, rows, and caveats."""
        return {
            "material": self.material,
            "chain": {
                "n_bands": list(self.chain.n_bands),
                "p_entries": list(self.chain.p_entries),
                "d_eff_m_per_v": self.chain.d_eff,
                "eta1_rel_bands": list(self.chain.eta1_rel_bands),
                "eta2": self.chain.eta2,
                "miller_Q": self.chain.Q,
                "q_eff_m2_per_c": self.chain.q_eff,
            },
            "p_nominal": self.p_nominal,
            "benchmark": {"g0_ref_rad_per_s": self.benchmark.g0_ref,
                          "label": self.benchmark.label},
            "rows": [vars(r) for r in self.rows],
            "notes": list(self.notes),
        }


def power_sweep(m: Material, bands: MixingBands, powers, mfd: float,
                n_mode: float, benchmark: CouplingBenchmark | None = None,
                p_nominal: float | None = None) -> DesignReport:
    """Tabulate the virtual photoelasticity and derived scalings vs. power.

    ``powers`` is a nonempty grid of pump powers (W) within ten times the
    damage-limited power for this geometry.  ``p_nominal`` defaults to the
    largest photoelastic entry of the material, the natural yardstick for the
    p_virt/p_nominal column.  The g_scaled column multiplies the benchmark
    coupling by p_virt/p_nominal (coupling proportional to the effective
    photoelasticity with all other device parameters held fixed) and is an
    extrapolation, not a device prediction.
    """
    powers = [float(p) for p in powers]
    if not powers:
        raise ValueError("power grid must not be empty")
    p_limit = damage_limited_power(m, mfd)
    if min(powers) < 0 or max(powers) > 10.0 * p_limit:
        raise ValueError(
            f"power grid must lie within [0, {10.0 * p_limit:.6g}] W "
            f"(10x the damage-limited power for MFD {mfd:.3g} m)")
    if benchmark is None:
        benchmark = PIEZO_OPTOMECHANICAL_BENCHMARK
    if p_nominal is None:
        with np.errstate(invalid="ignore"):
            p_nominal = float(np.nanmax(np.abs(m.photoelastic.entries)))
    if not p_nominal > 0:
        raise ValueError("p_nominal must be positive to form ratios")

    chain = second_order_photoelasticity(m, bands)
    eps_r = m.eps_r[bands.axes[2]]
    threshold = m.damage_threshold
    rows = []
    for p_w in powers:
        field = peak_field_from_power(PumpGeometry(p_w, mfd, n_mode))
        intensity = peak_intensity(p_w, mfd)
        p_virt = virtual_photoelasticity(chain.q_eff, eps_r, field)
        ratio = abs(p_virt) / p_nominal
        rows.append(SweepRow(
            power_w=p_w,
            peak_field_v_per_m=field,
            intensity_w_per_m2=intensity,
            p_virt=p_virt,
            p_virt_over_p_nominal=ratio,
            intensity_over_threshold=intensity / threshold,
            g_scaled_rad_per_s=benchmark.g0_ref * ratio,
        ))
    notes = (
        "photoelastic entries are single-wavelength values applied to all bands",
        f"g_scaled extrapolates benchmark '{benchmark.label}' proportionally "
        "in p_virt/p_nominal; it is not a device prediction",
    )
    return DesignReport(material=m.name, chain=chain, p_nominal=p_nominal,
                        benchmark=benchmark, rows=tuple(rows), notes=notes)
