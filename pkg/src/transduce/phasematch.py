"""Phase mismatch, quasi-phase-matching design, and conversion efficiency.

Propagation is collinear along z.  The four-wave mismatch is

    delta_k = k_t - k_p1 - k_p2 - k_m - poling_sign * 2 pi / Lambda

with optical wavevectors n(omega) omega / c, the acoustic wavevector
omega_m / v_s (linear acoustic dispersion), and the poling term absent when
no grating is specified.  The poling solver picks (Lambda, sign) so that the
grating's first diffraction order cancels the unpoled mismatch; a physical
grating carries both +-1 orders, so either sign is realizable.

Normalized conversion efficiency over a length L is sinc^2(delta_k L / 2),
the squared magnitude of (1/L) integral_0^L exp(i delta_k z) dz.  Absolute
coupling prefactors live in the estimator module.

The competing three-wave process (one pump plus the phonon) is evaluated
under the same material, geometry, and poling vector; because its generated
band sits at a very different wavelength than the four-wave output, a
dispersive medium cannot phase-match both at once and the three-wave channel
is suppressed by the same sinc^2 factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .estimator import MixingBands
from .materials import Material, refractive_index
from .units import C_LIGHT

TWO_PI = 2.0 * math.pi


def wavevector_optical(n: float, omega: float) -> float:
    """Optical wavevector n * omega / c (rad/m)."""
    if not n >= 1.0:
        raise ValueError(f"refractive index must be >= 1, got {n}")
    if not omega > 0:
        raise ValueError(f"optical angular frequency must be positive, got {omega}")
    return n * omega / C_LIGHT


def wavevector_acoustic(omega_m: float, v_s: float) -> float:
    """Acoustic wavevector omega_m / v_s (rad/m), linear dispersion."""
    if not v_s > 0:
        raise ValueError(f"sound speed must be positive, got {v_s}")
    if omega_m < 0:
        raise ValueError(f"phonon angular frequency must be >= 0, got {omega_m}")
    return omega_m / v_s


@dataclass(frozen=True)
class PhaseMatchInput:
    """Bands, material, interaction length, and optional poling grating."""

    bands: MixingBands
    material: Material
    length: float                     # m
    poling_period: float | None = None
    poling_sign: int = 1

    def __post_init__(self):
        if not (self.length > 0 and math.isfinite(self.length)):
            raise ValueError(f"interaction length must be positive, got {self.length}")
        if self.poling_period is not None and not self.poling_period > 0:
            raise ValueError(f"poling period must be positive, got {self.poling_period}")
        if self.poling_sign not in (-1, 1):
            raise ValueError(f"poling sign must be +-1, got {self.poling_sign}")


@dataclass(frozen=True)
class PhaseMatchResult:
    """All wavevector components of one mismatch evaluation (rad/m)."""

    k_t: float
    k_p1: float
    k_p2: float
    k_m: float
    k_poling: float                   # 0 when no grating
    delta_k: float
    lambda_qpm: float | None
    efficiency: float                 # sinc^2(delta_k L / 2), in [0, 1]


def _sound_speed(m: Material, mode: str) -> float:
    try:
        return m.v_sound[mode]
    except KeyError:
        have = ", ".join(sorted(m.v_sound)) or "<none>"
        raise DataError(
            f"material '{m.name}' has no sound speed for acoustic mode "
            f"'{mode}' (have: {have})") from None


def pm_efficiency(delta_k: float, length: float) -> float:
    """Normalized phase-matching efficiency sinc^2(delta_k * length / 2).

    Equals 1 exactly at delta_k = 0 (removable singularity) and is an even
    function of delta_k bounded by 1/(delta_k L / 2)^2.
    """
    if not length > 0:
        raise ValueError(f"length must be positive, got {length}")
    u = delta_k * length / 2.0
    return float(np.sinc(u / math.pi) ** 2)


def delta_k(pm_in: PhaseMatchInput) -> PhaseMatchResult:
    """Evaluate the four-wave mismatch and its components for ``pm_in``."""
    b = pm_in.bands
    m = pm_in.material
    lam_p1, lam_p2, lam_t = b.wavelengths
    k_p1 = wavevector_optical(refractive_index(m, lam_p1, b.axes[0]), b.omega_p1)
    k_p2 = wavevector_optical(refractive_index(m, lam_p2, b.axes[1]), b.omega_p2)
    k_t = wavevector_optical(refractive_index(m, lam_t, b.axes[2]), b.omega_t)
    v_s = _sound_speed(m, b.acoustic_mode)
    k_m = wavevector_acoustic(b.omega_m, v_s)
    if pm_in.poling_period is not None:
        k_pol = pm_in.poling_sign * TWO_PI / pm_in.poling_period
    else:
        k_pol = 0.0
    dk = k_t - k_p1 - k_p2 - k_m - k_pol
    return PhaseMatchResult(
        k_t=k_t, k_p1=k_p1, k_p2=k_p2, k_m=k_m, k_poling=k_pol, delta_k=dk,
        lambda_qpm=pm_in.poling_period,
        efficiency=pm_efficiency(dk, pm_in.length))


def poling_period(pm_in: PhaseMatchInput) -> tuple[float, int] | None:
    """Solve for the grating (Lambda, sign) that cancels the unpoled mismatch.

    Returns None when the process is already phase matched (a distinguished
    no-poling-needed outcome, not an error).  Any poling on the input is
    ignored; the solve always starts from the bare mismatch.
    """
    bare = PhaseMatchInput(bands=pm_in.bands, material=pm_in.material,
                           length=pm_in.length, poling_period=None)
    dk0 = delta_k(bare).delta_k
    if dk0 == 0.0:
        return None
    sign = 1 if dk0 > 0 else -1
    return TWO_PI / abs(dk0), sign


@dataclass(frozen=True)
class ThreeWaveResidual:
    """Mismatch of the competing three-wave process under a fixed grating."""

    delta_k_3wm: float
    suppression: float                # pm_efficiency of the 3WM channel
    phase_matched: bool               # True flags a degenerate configuration


def three_wave_residual(pm_in: PhaseMatchInput,
                        pump_choice: int = 1) -> ThreeWaveResidual:
    """Mismatch and suppression of single-pump three-wave mixing when the
    geometry (and any poling) is configured for the four-wave process.

    ``pump_choice`` selects which pump (1 or 2) drives the three-wave channel
    at omega_t3 = omega_pump + omega_m; the same poling vector enters with
    the same sign convention as in :func:`delta_k`.  A suppression of 1 means
    the configuration is degenerate (three-wave matched as well) and is
    flagged so reports can call it out.
    """
    if pump_choice not in (1, 2):
        raise ValueError(f"pump_choice must be 1 or 2, got {pump_choice}")
    b = pm_in.bands
    m = pm_in.material
    omega_p = b.omega_p1 if pump_choice == 1 else b.omega_p2
    axis_p = b.axes[0] if pump_choice == 1 else b.axes[1]
    lam_p = TWO_PI * C_LIGHT / omega_p
    omega_t3 = omega_p + b.omega_m
    lam_t3 = TWO_PI * C_LIGHT / omega_t3
    k_p = wavevector_optical(refractive_index(m, lam_p, axis_p), omega_p)
    k_t3 = wavevector_optical(refractive_index(m, lam_t3, b.axes[2]), omega_t3)
    k_m = wavevector_acoustic(b.omega_m, _sound_speed(m, b.acoustic_mode))
    k_pol = (pm_in.poling_sign * TWO_PI / pm_in.poling_period
             if pm_in.poling_period is not None else 0.0)
    dk3 = k_t3 - k_p - k_m - k_pol
    supp = pm_efficiency(dk3, pm_in.length)
    return ThreeWaveResidual(
        delta_k_3wm=dk3,
        suppression=supp,
        phase_matched=(dk3 == 0.0 or supp > 1.0 - 1e-12))


def sweep(pm_in: PhaseMatchInput, variable: str, values) -> list[tuple[float, PhaseMatchResult]]:
    """Re-evaluate delta_k over a grid of one design variable.

    ``variable`` is ``"pump-wavelength"`` (both pumps move together, m) or
    ``"poling-period"`` (m).  Returns (value, result) pairs in grid order;
    evaluations are independent, so order is deterministic.
    """
    out = []
    for v in values:
        if variable == "pump-wavelength":
            bands = MixingBands.from_vacuum_wavelengths(
                v, v, pm_in.bands.omega_m / TWO_PI,
                axes=pm_in.bands.axes, acoustic_mode=pm_in.bands.acoustic_mode,
                strain_voigt=pm_in.bands.strain_voigt)
            probe = PhaseMatchInput(bands=bands, material=pm_in.material,
                                    length=pm_in.length,
                                    poling_period=pm_in.poling_period,
                                    poling_sign=pm_in.poling_sign)
        elif variable == "poling-period":
            probe = PhaseMatchInput(bands=pm_in.bands, material=pm_in.material,
                                    length=pm_in.length, poling_period=float(v),
                                    poling_sign=pm_in.poling_sign)
        else:
            raise ValueError(
                f"variable must be 'pump-wavelength' or 'poling-period', got {variable!r}")
        out.append((float(v), delta_k(probe)))
    return out


SWEEP_CSV_HEADER = ("sweep_value,k_t_rad_per_m,k_p1_rad_per_m,k_p2_rad_per_m,"
                    "k_m_rad_per_m,k_poling_rad_per_m,delta_k_rad_per_m,efficiency")


def sweep_to_csv(rows: list[tuple[float, PhaseMatchResult]]) -> str:
    lines = [SWEEP_CSV_HEADER]
    for v, r in rows:
        lines.append(",".join(repr(x) for x in (
            v, r.k_t, r.k_p1, r.k_p2, r.k_m, r.k_poling, r.delta_k, r.efficiency)))
    return "\n".join(lines) + "\n"
