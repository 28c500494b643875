"""Dirac matching matrix for the PT-symmetric square well.

M maps the plane-wave coefficients of region I onto those of region IV:

    (A_IV, B_IV)^T = M . (A_I, B_I)^T

built from continuity of the two-component spinor at x = -b, 0, +b. Three
independent constructions are provided:

* `matching_matrix_closed_form` - the production path. Entries in closed
  form from (k, lambda) outside and (K, Lambda) inside the well; M22 is the
  complex conjugate of M11, the off-diagonal entries are purely imaginary
  (at scattering energies), and det M = 1.
* `matching_matrix_product` - brute-force product of the six region basis
  matrices, with its own direct (principal-branch) kinematics. Oracle #1.
* `matching_matrix_ode` - adaptive integration of the first-order spinor
  system across the well. Oracle #2.

The closed form evaluates hyperbolic terms in a factored representation
(entry * exp(log_scale)) so that deep evanescent regimes (2*b*|Im K| large)
neither overflow nor lose the scattering amplitudes, which depend only on
entry ratios.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict

import numpy as np
from scipy.integrate import solve_ivp

from . import _kernels
from .errors import BandEdgeDegeneracy, IntegrationFailure, SingularOmega
from .potential import PotentialSpec, Region, RegionKinematics, region_kinematics

_OMEGA_DET_FLOOR = 1e-14


@dataclass(frozen=True)
class OmegaMatrix:
    """Region basis matrix at a coordinate: columns are the two independent
    plane-wave spinor solutions e^{+ikx}(1, lambda) and e^{-ikx}(1, -lambda).
    Its determinant is -2*lambda, independent of x."""

    region: Region
    x: float
    entries: np.ndarray

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.entries))


@dataclass(frozen=True)
class SolutionCoefficients:
    """Amplitudes (a, b) of the right- and left-moving basis solutions."""

    a: complex
    b: complex


@dataclass(frozen=True)
class MatchingMatrix:
    """2x2 complex matching matrix at one energy.

    `entries` holds the factored representation: the true matrix is
    entries * exp(log_scale). log_scale is 0 except deep in evanescent
    regimes (see module docstring); `scaled` flags those points.
    """

    entries: np.ndarray
    energy: float
    spec: PotentialSpec
    log_scale: float = 0.0

    @property
    def m11(self) -> complex:
        return complex(self.entries[0, 0])

    @property
    def m12(self) -> complex:
        return complex(self.entries[0, 1])

    @property
    def m21(self) -> complex:
        return complex(self.entries[1, 0])

    @property
    def m22(self) -> complex:
        return complex(self.entries[1, 1])

    @property
    def scaled(self) -> bool:
        return self.log_scale > 0.0

    def det(self) -> complex:
        """Determinant of the true matrix (overflows if exp(2*log_scale) does)."""
        return complex(np.linalg.det(self.entries)) * np.exp(2.0 * self.log_scale)


def omega_matrix(kinematics: RegionKinematics, x: float) -> OmegaMatrix:
    k, lam = kinematics.kj, kinematics.lambdaj
    ep = np.exp(1j * k * x)
    em = np.exp(-1j * k * x)
    entries = np.array([[ep, em], [lam * ep, -lam * em]], dtype=complex)
    return OmegaMatrix(region=kinematics.region, x=x, entries=entries)


def _validate_scattering_energy(spec: PotentialSpec, energy: float) -> None:
    if abs(energy) <= spec.m:
        raise BandEdgeDegeneracy(
            f"|E| = {abs(energy)!r} <= m = {spec.m!r}: not a scattering energy"
        )


def closed_form_entries(spec: PotentialSpec, energies) -> tuple:
    """Vectorized closed-form entries over an array of scattering energies.

    Returns (m11, m12, m21, m22, log_scale) arrays in the factored
    representation. Callers must pass admissible energies.
    """
    return _kernels.matching_entries(energies, spec.v0, spec.v1, spec.b, spec.q, spec.m)


def matching_matrix_closed_form(spec: PotentialSpec, energy: float) -> MatchingMatrix:
    """Closed-form matching matrix at one scattering energy (|E| > m)."""
    _validate_scattering_energy(spec, energy)
    if spec.v1 == 0.0:
        shifted = energy - spec.q * spec.v0
        if shifted == spec.m or shifted == -spec.m:
            raise BandEdgeDegeneracy(
                f"E = {energy!r} sits on a shifted band edge of the real well"
            )
    m11, m12, m21, m22, sig = closed_form_entries(spec, np.array([energy]))
    entries = np.array([[m11[0], m12[0]], [m21[0], m22[0]]], dtype=complex)
    if not np.all(np.isfinite(entries.view(np.float64))):
        raise BandEdgeDegeneracy(
            f"matching matrix degenerate at E = {energy!r} (non-finite entries)"
        )
    return MatchingMatrix(entries=entries, energy=energy, spec=spec, log_scale=float(sig[0]))


def _direct_kinematics(spec: PotentialSpec, energy: float, vj: complex) -> tuple[complex, complex]:
    # principal-branch kinematics, deliberately independent of the polar
    # parameterization used by the closed form (the matrix is branch-free)
    k = np.sqrt(complex((energy - vj) ** 2 - spec.m * spec.m))
    lam = k / (energy - vj + spec.m)
    return complex(k), complex(lam)


def _raw_omega(k: complex, lam: complex, x: float) -> np.ndarray:
    ep = np.exp(1j * k * x)
    em = np.exp(-1j * k * x)
    return np.array([[ep, em], [lam * ep, -lam * em]], dtype=complex)


def _checked_inv(mat: np.ndarray, what: str) -> np.ndarray:
    det = complex(np.linalg.det(mat))
    if not np.isfinite(abs(det)) or abs(det) < _OMEGA_DET_FLOOR:
        raise SingularOmega(f"{what}: |det| = {abs(det):.3e}")
    return np.linalg.inv(mat)


def matching_matrix_product(spec: PotentialSpec, energy: float) -> MatchingMatrix:
    """Brute-force six-factor product

        Omega_IV^-1(+b) . Omega_III(+b) . Omega_III^-1(0) . Omega_II(0)
                        . Omega_II^-1(-b) . Omega_I(-b)

    with direct principal-branch kinematics per region. Verification oracle;
    also valid at bound-state energies |E| < m (decaying branch outside).
    """
    m = spec.m
    if energy == m or energy == -m:
        raise BandEdgeDegeneracy(f"E = {energy!r} sits on a band edge")
    kI, lI = _direct_kinematics(spec, energy, 0.0 + 0.0j)
    kII, lII = _direct_kinematics(spec, energy, spec.v_ii)
    kIII, lIII = _direct_kinematics(spec, energy, spec.v_iii)
    b = spec.b
    mat = _checked_inv(_raw_omega(kI, lI, b), "Omega_IV(+b)") @ _raw_omega(kIII, lIII, b)
    mat = mat @ _checked_inv(_raw_omega(kIII, lIII, 0.0), "Omega_III(0)") @ _raw_omega(kII, lII, 0.0)
    mat = mat @ _checked_inv(_raw_omega(kII, lII, -b), "Omega_II(-b)") @ _raw_omega(kI, lI, -b)
    return MatchingMatrix(entries=mat, energy=energy, spec=spec)


def matching_matrix_ode(spec: PotentialSpec, energy: float, tol: float = 1e-8) -> MatchingMatrix:
    """Matching matrix from adaptive integration of the spinor system

        u' = i*(E - V(x) + m) * l,      l' = i*(E - V(x) - m) * u

    across the well for two independent initial columns, converted back to
    the plane-wave basis of region IV. Verification oracle; agreement with
    the closed form is expected within ~10*tol.
    """
    if not (1e-12 <= tol <= 1e-4):
        raise ValueError(f"tol must lie in [1e-12, 1e-4], got {tol!r}")
    _validate_scattering_energy(spec, energy)
    m = spec.m
    b = spec.b
    k = np.sqrt(energy * energy - m * m)
    lam = k / (energy + m)

    def rhs_for(v: complex):
        c_u = 1j * (energy - v + m)
        c_l = 1j * (energy - v - m)

        def rhs(_x, y):
            u = y[0] + 1j * y[1]
            l = y[2] + 1j * y[3]
            du = c_u * l
            dl = c_l * u
            return (du.real, du.imag, dl.real, dl.imag)

        return rhs

    legs = ((-b, 0.0, spec.v_ii), (0.0, b, spec.v_iii))
    columns = []
    for init in ((1.0, 0.0), (0.0, 1.0)):
        psi = _raw_omega(k, lam, -b) @ np.array(init, dtype=complex)
        y = [psi[0].real, psi[0].imag, psi[1].real, psi[1].imag]
        for x0, x1, v in legs:
            sol = solve_ivp(
                rhs_for(v), (x0, x1), y, method="DOP853", rtol=tol, atol=1e-14
            )
            if not sol.success:
                raise IntegrationFailure(
                    f"integration failed on [{x0}, {x1}] at E = {energy!r}: {sol.message}"
                )
            y = sol.y[:, -1]
        columns.append((y[0] + 1j * y[1], y[2] + 1j * y[3]))
    psi_at_b = np.array(columns, dtype=complex).T
    mat = _checked_inv(_raw_omega(k, lam, b), "Omega_IV(+b)") @ psi_at_b
    return MatchingMatrix(entries=mat, energy=energy, spec=spec)


def propagate_coefficients(
    spec: PotentialSpec, energy: float, coefficients: SolutionCoefficients
) -> Dict[Region, SolutionCoefficients]:
    """Propagate region-I coefficients through II and III to IV by successive
    continuity maps Omega_{J+1}^-1 . Omega_J at the boundaries. The region IV
    result equals the matching matrix applied to the region I coefficients."""
    kin = {r: region_kinematics(spec, energy, r) for r in Region}
    vec = np.array([coefficients.a, coefficients.b], dtype=complex)
    out = {Region.I: coefficients}
    boundaries = (
        (Region.I, Region.II, -spec.b),
        (Region.II, Region.III, 0.0),
        (Region.III, Region.IV, spec.b),
    )
    for src, dst, x in boundaries:
        om_src = omega_matrix(kin[src], x).entries
        om_dst = omega_matrix(kin[dst], x).entries
        vec = _checked_inv(om_dst, f"Omega_{dst.name}({x})") @ om_src @ vec
        out[dst] = SolutionCoefficients(a=complex(vec[0]), b=complex(vec[1]))
    return out
