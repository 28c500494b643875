"""Transmission/reflection coefficients, S matrix, scans and resonances.

From the matching matrix M at a scattering energy:

    T_LR = 1/M22        R_LR = -M21/M22
    T_RL = 1/M22        R_RL = +M12/M22

so the two transmission amplitudes are identical, while the reflections
differ once the imaginary depth is switched on. The scattering matrix

    S = [[T_LR, R_RL], [R_LR, T_RL]]

is not unitary for v1 > 0, but |det S| = 1 always (det S = M11/M22 with
M22 = conj(M11)). The flux gain |T|^2 + |R|^2 - 1 per direction measures
absorption (< 0) versus generation (> 0).

All amplitudes are ratios of matching-matrix entries, so the factored
exp(log_scale) representation cancels everywhere except in T itself, which
picks up exp(-log_scale) (a genuinely tiny transmission).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import EmptyGrid, TransmissionPole
from .matching import closed_form_entries
from .potential import PotentialSpec

POLE_THRESHOLD = 1e-13


class FluxBehavior(Enum):
    ABSORPTIVE = "absorptive"
    GENERATIVE = "generative"
    INTERMEDIATE = "intermediate"


@dataclass(frozen=True)
class FluxClassification:
    """Scan-level classification; zero_gain marks a unitary (Hermitian) scan,
    which satisfies neither strict inequality and is reported intermediate."""

    kind: FluxBehavior
    zero_gain: bool = False


@dataclass(frozen=True)
class ScatteringObservables:
    energy: float
    t_lr: complex
    t_rl: complex
    r_lr: complex
    r_rl: complex
    s_matrix: np.ndarray
    flux_gain_lr: float
    flux_gain_rl: float

    @property
    def t2(self) -> float:
        return abs(self.t_lr) ** 2

    @property
    def r2_lr(self) -> float:
        return abs(self.r_lr) ** 2

    @property
    def r2_rl(self) -> float:
        return abs(self.r_rl) ** 2


@dataclass(frozen=True)
class Resonance:
    """A refined local maximum of |T|^2: peak energy, peak height and
    half-width (half of the full width at half maximum; NaN when a
    half-maximum crossing falls outside the scanned window)."""

    energy: float
    height: float
    half_width: float


@dataclass
class ScanResult:
    """Observables evaluated on an admissible energy grid.

    Rows where |M22| < 1e-13 (a real-axis transmission pole) are flagged in
    `pole` and carry NaN amplitudes. `created_at` is wall-clock metadata and
    never enters serialized data by default.
    """

    spec: PotentialSpec
    e_min: float
    e_max: float
    n_requested: int
    exclusion_half_width: float
    energies: np.ndarray
    t: np.ndarray
    r_lr: np.ndarray
    r_rl: np.ndarray
    t2: np.ndarray
    r2_lr: np.ndarray
    r2_rl: np.ndarray
    gain_lr: np.ndarray
    gain_rl: np.ndarray
    pole: np.ndarray
    created_at: float = field(default_factory=time.time)

    def __len__(self) -> int:
        return len(self.energies)


def _amplitude_arrays(spec: PotentialSpec, energies: np.ndarray):
    m11, m12, m21, m22, sig = closed_form_entries(spec, energies)
    pole = np.abs(m22) < POLE_THRESHOLD
    safe_m22 = np.where(pole, 1.0, m22)
    t = np.exp(-sig) / safe_m22
    r_lr = -m21 / safe_m22
    r_rl = m12 / safe_m22
    t = np.where(pole, np.nan + 1j * np.nan, t)
    r_lr = np.where(pole, np.nan + 1j * np.nan, r_lr)
    r_rl = np.where(pole, np.nan + 1j * np.nan, r_rl)
    return t, r_lr, r_rl, m22, pole


def scattering_observables(spec: PotentialSpec, energy: float) -> ScatteringObservables:
    """Observables at one scattering energy. Raises TransmissionPole when
    |M22| < 1e-13 (spectral singularity on the real axis)."""
    from .matching import matching_matrix_closed_form

    mm = matching_matrix_closed_form(spec, energy)  # validates admissibility
    if abs(mm.m22) < POLE_THRESHOLD:
        raise TransmissionPole(energy, abs(mm.m22))
    t = math.exp(-mm.log_scale) / mm.m22
    r_lr = -mm.m21 / mm.m22
    r_rl = mm.m12 / mm.m22
    s = np.array([[t, r_rl], [r_lr, t]], dtype=complex)
    return ScatteringObservables(
        energy=energy,
        t_lr=t,
        t_rl=t,
        r_lr=r_lr,
        r_rl=r_rl,
        s_matrix=s,
        flux_gain_lr=abs(t) ** 2 + abs(r_lr) ** 2 - 1.0,
        flux_gain_rl=abs(t) ** 2 + abs(r_rl) ** 2 - 1.0,
    )


def admissible_mask(spec: PotentialSpec, energies: np.ndarray, exclusion_half_width: float) -> np.ndarray:
    """Scattering admissibility: outside the gap, away from the band edges
    +/-m, and (real well only) away from the shifted edges q*v0 +/- m where
    the in-well basis degenerates."""
    e = np.asarray(energies, dtype=float)
    keep = np.abs(np.abs(e) - spec.m) > exclusion_half_width
    keep &= np.abs(e) > spec.m
    if spec.v1 == 0.0:
        for edge in (spec.q * spec.v0 + spec.m, spec.q * spec.v0 - spec.m):
            keep &= np.abs(e - edge) > exclusion_half_width
    return keep


def energy_scan(
    spec: PotentialSpec,
    e_min: float,
    e_max: float,
    n: int,
    exclusion_half_width: float = 1e-6,
) -> ScanResult:
    """Evaluate observables on a uniform grid, dropping inadmissible points.

    The range may straddle the gap (-m, m); gap points and points within
    exclusion_half_width of the band edges are dropped. Output ordering is
    by increasing energy and is deterministic.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not e_min < e_max:
        raise ValueError(f"need e_min < e_max, got [{e_min}, {e_max}]")
    if exclusion_half_width < 0:
        raise ValueError("exclusion_half_width must be >= 0")
    grid = np.linspace(e_min, e_max, n)
    grid = grid[admissible_mask(spec, grid, exclusion_half_width)]
    if len(grid) == 0:
        raise EmptyGrid(
            f"no admissible energies in [{e_min}, {e_max}] with n = {n}, "
            f"exclusion = {exclusion_half_width}"
        )
    t, r_lr, r_rl, _m22, pole = _amplitude_arrays(spec, grid)
    t2 = np.abs(t) ** 2
    r2_lr = np.abs(r_lr) ** 2
    r2_rl = np.abs(r_rl) ** 2
    return ScanResult(
        spec=spec,
        e_min=e_min,
        e_max=e_max,
        n_requested=n,
        exclusion_half_width=exclusion_half_width,
        energies=grid,
        t=t,
        r_lr=r_lr,
        r_rl=r_rl,
        t2=t2,
        r2_lr=r2_lr,
        r2_rl=r2_rl,
        gain_lr=t2 + r2_lr - 1.0,
        gain_rl=t2 + r2_rl - 1.0,
        pole=pole,
    )


def _refined_height(spec: PotentialSpec, energy: float, fallback: float) -> float:
    t, *_rest, pole = _amplitude_arrays(spec, np.array([energy]))
    if pole[0] or not np.isfinite(t[0]):
        return fallback
    return float(np.abs(t[0]) ** 2)


def find_transmission_resonances(
    scan: ScanResult, window: tuple[float, float] | None = None
) -> list[Resonance]:
    """Local maxima of |T|^2 inside the window (default: the negative-energy
    range [-2m, -m] adjacent to the gap, where transmission resonances signal
    spontaneous pair production in an overcritical well).

    Peak locations are refined by a three-point parabola on log|T|^2; peak
    heights are re-evaluated at the refined energy; half-widths come from
    linear interpolation of the two half-maximum crossings.
    """
    m = scan.spec.m
    if window is None:
        window = (-2.0 * m, -1.0 * m)
    w_lo, w_hi = min(window), max(window)
    idx = np.nonzero(
        (scan.energies >= w_lo) & (scan.energies <= w_hi) & ~scan.pole
    )[0]
    resonances: list[Resonance] = []
    if len(idx) < 3:
        return resonances
    e = scan.energies[idx]
    t2 = scan.t2[idx]
    for j in range(1, len(idx) - 1):
        # require contiguous grid neighbours so maxima at exclusion seams are skipped
        if idx[j - 1] != idx[j] - 1 or idx[j + 1] != idx[j] + 1:
            continue
        if t2[j] <= 0.0:
            continue
        # prominence above float noise, so a flat unitary |T|^2 has no peaks
        floor = 1e-12 * t2[j]
        if not (t2[j] - t2[j - 1] > floor and t2[j] - t2[j + 1] > floor):
            continue
        y0, y1, y2 = np.log(t2[j - 1]), np.log(t2[j]), np.log(t2[j + 1])
        denom = y0 - 2.0 * y1 + y2
        offset = 0.0 if denom == 0.0 else 0.5 * (y0 - y2) / denom
        offset = float(np.clip(offset, -0.5, 0.5))
        step = 0.5 * (e[j + 1] - e[j - 1])
        e_peak = float(e[j] + offset * step)
        height = _refined_height(scan.spec, e_peak, fallback=float(t2[j]))
        if height < t2[j]:
            e_peak, height = float(e[j]), float(t2[j])
        resonances.append(
            Resonance(energy=e_peak, height=height, half_width=_half_width(e, t2, j, height))
        )
    resonances.sort(key=lambda r: r.energy)
    return resonances


def _half_width(e: np.ndarray, t2: np.ndarray, j: int, height: float) -> float:
    half = 0.5 * height
    lo = hi = math.nan
    for i in range(j, 0, -1):
        if t2[i - 1] < half <= t2[i]:
            frac = (t2[i] - half) / (t2[i] - t2[i - 1])
            lo = e[i] - frac * (e[i] - e[i - 1])
            break
    for i in range(j, len(e) - 1):
        if t2[i + 1] < half <= t2[i]:
            frac = (t2[i] - half) / (t2[i] - t2[i + 1])
            hi = e[i] + frac * (e[i + 1] - e[i])
            break
    if math.isnan(lo) or math.isnan(hi):
        return math.nan
    return 0.5 * (hi - lo)


def flux_gain_classification(scan: ScanResult, zero_tol: float = 1e-10) -> FluxClassification:
    """Absorptive iff the flux gain is negative at every point in both
    directions, generative iff positive everywhere; anything else (including
    an identically zero, unitary scan) is intermediate."""
    if len(scan) == 0:
        raise ValueError("cannot classify an empty scan")
    ok = ~scan.pole
    gains = np.concatenate([scan.gain_lr[ok], scan.gain_rl[ok]])
    gains = gains[np.isfinite(gains)]
    if len(gains) == 0:
        raise ValueError("no finite flux gains in scan")
    if np.all(np.abs(gains) <= zero_tol):
        return FluxClassification(kind=FluxBehavior.INTERMEDIATE, zero_gain=True)
    if np.all(gains < 0.0):
        return FluxClassification(kind=FluxBehavior.ABSORPTIVE)
    if np.all(gains > 0.0):
        return FluxClassification(kind=FluxBehavior.GENERATIVE)
    return FluxClassification(kind=FluxBehavior.INTERMEDIATE)
