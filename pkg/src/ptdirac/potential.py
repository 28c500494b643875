"""PT-symmetric square well potential and per-region plane-wave kinematics.

The potential is the time component of a vector potential for a Dirac
particle in (1+1) dimensions, piecewise constant over four regions:

    V(x) = 0                   x < -b        (region I)
    V(x) = q*(V0 - i*V1)       -b <= x < 0   (region II)
    V(x) = q*(V0 + i*V1)       0 < x <= +b   (region III)
    V(x) = 0                   x > +b        (region IV)

so that V(x) = conj(V(-x)) by construction (PT symmetry). Natural units
hbar = c = 1 are used throughout: energies are in units of the mass m and
lengths in Compton wavelengths 1/m.

In each region a stationary solution is a superposition of plane waves
exp(+/- i k_J x) with

    k_J^2      = (E - V_J)^2 - m^2
    lambda_J   = k_J / (E - V_J + m)      (lower/upper spinor component ratio)

Regions I and IV share real k = sqrt(E^2 - m^2) > 0 (scattering, |E| > m)
or k = i*sqrt(m^2 - E^2) (bound branch, |E| < m); region III values are the
complex conjugates of region II values.

Inside the well it is convenient to use the polar form

    alpha_pm = |(E - q*V0 +/- m) + i*q*V1|,
    phi_pm   = atan2(q*V1, E - q*V0 +/- m),

    K      = sqrt(alpha_plus*alpha_minus) * exp(i*(phi_plus + phi_minus)/2)
    Lambda = K / (E - V_II + m)
           = sqrt(alpha_minus/alpha_plus) * exp(i*(phi_minus - phi_plus)/2).

The two-argument arctangent guarantees alpha_pm*exp(i*phi_pm) equals
(E - q*V0 +/- m) + i*q*V1 in every quadrant, so K^2 = (E - V_II)^2 - m^2
holds exactly for all sign combinations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable

from .errors import BandEdgeDegeneracy, DegenerateParameterization


class Region(Enum):
    I = 1
    II = 2
    III = 3
    IV = 4


@dataclass(frozen=True)
class PotentialSpec:
    """Parameters of the PT-symmetric square well.

    v0, v1 : real and imaginary depths (units of m); v1 = 0 is the real well
    b      : half-width (units of 1/m)
    q      : charge, -1 for particles
    m      : mass (default 1 in natural units)
    """

    v0: float
    v1: float
    b: float
    q: int = -1
    m: float = 1.0

    def __post_init__(self):
        # v0 = 0 is admitted (free case) even though the generic well has v0 > 0.
        if not (self.v0 >= 0.0 and math.isfinite(self.v0)):
            raise ValueError(f"v0 must be finite and >= 0, got {self.v0}")
        if not (self.v1 >= 0.0 and math.isfinite(self.v1)):
            raise ValueError(f"v1 must be finite and >= 0, got {self.v1}")
        if not (self.b > 0.0 and math.isfinite(self.b)):
            raise ValueError(f"b must be finite and > 0, got {self.b}")
        if self.q not in (-1, 1):
            raise ValueError(f"q must be -1 or +1, got {self.q}")
        if not (self.m > 0.0 and math.isfinite(self.m)):
            raise ValueError(f"m must be finite and > 0, got {self.m}")

    @property
    def v_ii(self) -> complex:
        """Potential value in region II: q*(v0 - i*v1)."""
        return self.q * complex(self.v0, -self.v1)

    @property
    def v_iii(self) -> complex:
        """Potential value in region III: q*(v0 + i*v1)."""
        return self.q * complex(self.v0, self.v1)

    def value_in(self, region: Region) -> complex:
        if region is Region.II:
            return self.v_ii
        if region is Region.III:
            return self.v_iii
        return 0.0 + 0.0j


@dataclass(frozen=True)
class RegionKinematics:
    """Momentum and spinor ratio of the plane-wave basis in one region."""

    region: Region
    vj: complex
    kj: complex
    lambdaj: complex


@dataclass(frozen=True)
class WellParameterization:
    """Polar parameterization of the in-well momentum K and spinor ratio Lambda."""

    alpha_plus: float
    alpha_minus: float
    phi_plus: float
    phi_minus: float
    k_well: complex
    lambda_well: complex


def potential_at(spec: PotentialSpec, x: float) -> complex:
    """Potential value at coordinate x.

    The boundary point x = 0 is assigned to region II (a measure-zero
    convention; matching at x = 0 is done by continuity, not by this value).
    """
    if x < -spec.b or x > spec.b:
        return 0.0 + 0.0j
    if x <= 0.0:
        return spec.v_ii
    return spec.v_iii


def pt_conjugate_check(
    spec: PotentialSpec,
    grid: Iterable[float],
    potential: Callable[[float], complex] | None = None,
    tol: float = 1e-15,
) -> bool:
    """True iff V(x) == conj(V(-x)) on the grid, within tol.

    `potential` overrides the spec's potential (used for negative controls).
    The single point x = 0 is skipped: it sits on the region II/III seam and
    its value is a convention, not a constraint.
    """
    v = potential if potential is not None else (lambda x: potential_at(spec, x))
    for x in grid:
        if x == 0.0:
            continue
        lhs = complex(v(x))
        rhs = complex(v(-x)).conjugate()
        if abs(lhs - rhs) > tol * max(1.0, abs(lhs), abs(rhs)):
            return False
    return True


def well_parameterization(spec: PotentialSpec, energy: float) -> WellParameterization:
    """Polar form (alpha_pm, phi_pm) and the derived (K, Lambda) for region II.

    Raises DegenerateParameterization when either alpha vanishes (possible
    only at the shifted band edges E - q*v0 = +/-m of a real well), where
    K = 0 and Lambda is 0 or infinite.
    """
    re_plus = energy - spec.q * spec.v0 + spec.m
    re_minus = energy - spec.q * spec.v0 - spec.m
    im = spec.q * spec.v1
    if im == 0.0:
        im = 0.0  # never -0.0: keeps atan2 on the +pi branch at v1 = 0
    alpha_plus = math.hypot(re_plus, im)
    alpha_minus = math.hypot(re_minus, im)
    if alpha_plus == 0.0 or alpha_minus == 0.0:
        raise DegenerateParameterization(
            f"degenerate well parameterization at E = {energy!r} "
            f"(alpha+ = {alpha_plus}, alpha- = {alpha_minus})"
        )
    phi_plus = math.atan2(im, re_plus)
    phi_minus = math.atan2(im, re_minus)

    k_mod = math.sqrt(alpha_plus * alpha_minus)
    k_arg = 0.5 * (phi_plus + phi_minus)
    k_well = complex(k_mod * math.cos(k_arg), k_mod * math.sin(k_arg))
    l_mod = math.sqrt(alpha_minus / alpha_plus)
    l_arg = 0.5 * (phi_minus - phi_plus)
    lambda_well = complex(l_mod * math.cos(l_arg), l_mod * math.sin(l_arg))
    return WellParameterization(
        alpha_plus=alpha_plus,
        alpha_minus=alpha_minus,
        phi_plus=phi_plus,
        phi_minus=phi_minus,
        k_well=k_well,
        lambda_well=lambda_well,
    )


def _asymptotic_kinematics(spec: PotentialSpec, energy: float) -> tuple[complex, complex]:
    m = spec.m
    if energy == m or energy == -m:
        raise BandEdgeDegeneracy(f"E = {energy!r} sits on a band edge (+/-{m})")
    if abs(energy) > m:
        k = complex(math.sqrt(energy * energy - m * m), 0.0)  # k > 0 branch
    else:
        k = complex(0.0, math.sqrt(m * m - energy * energy))  # decaying branch
    lam = k / (energy + m)
    return k, lam


def region_kinematics(
    spec: PotentialSpec, energy: float, region: Region
) -> RegionKinematics:
    """Kinematics (k_J, lambda_J) of one region at a real energy.

    Branch conventions: regions I/IV use k = +sqrt(E^2 - m^2) for |E| > m
    and k = +i*sqrt(m^2 - E^2) for |E| < m; region II uses the polar
    parameterization; region III is the componentwise conjugate of region II.
    """
    if not math.isfinite(energy):
        raise ValueError(f"energy must be finite, got {energy!r}")
    if region in (Region.I, Region.IV):
        k, lam = _asymptotic_kinematics(spec, energy)
        return RegionKinematics(region=region, vj=0.0 + 0.0j, kj=k, lambdaj=lam)

    if spec.v1 == 0.0:
        shifted = energy - spec.q * spec.v0
        if shifted == spec.m or shifted == -spec.m:
            raise BandEdgeDegeneracy(
                f"E = {energy!r} sits on a shifted band edge of the real well "
                f"(E - q*v0 = {shifted!r})"
            )
    wp = well_parameterization(spec, energy)
    if region is Region.II:
        return RegionKinematics(
            region=region, vj=spec.v_ii, kj=wp.k_well, lambdaj=wp.lambda_well
        )
    return RegionKinematics(
        region=Region.III,
        vj=spec.v_iii,
        kj=wp.k_well.conjugate(),
        lambdaj=wp.lambda_well.conjugate(),
    )
