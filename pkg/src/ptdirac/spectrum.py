"""Bound-state spectrum of the PT-symmetric square well.

Real bound-state energies in (-m, m) are the zeros of the analytic
continuation of M22 to the decaying branch k = i*k', k' = sqrt(m^2 - E^2):
they are poles of the transmission coefficient. The continuation is real on
(-m, m), so roots are found by bracketing sign changes on a grid.

Increasing the imaginary depth v1 removes real bound states: the count is
non-increasing and `critical_v1` locates the first disappearance by
bisection on the count. States leave either by pairwise merging on the real
axis or by crossing the band edge E = -m into the continuum; in both cases
they continue as complex-conjugate zero pairs of the continued M22
(complex eigenvalues), which `complex_m22_zeros` tracks with a damped
Newton search. Such pairs may sit at Re E beyond the edges, so search boxes
are not restricted to the strip |Re E| < m.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, linear_sum_assignment

from . import _kernels
from .errors import BandEdgeDegeneracy, NoBreakingDetected
from .potential import PotentialSpec

_EDGE_MARGIN = 1e-9
_DEDUP_TOL = 1e-8


@dataclass(frozen=True)
class Spectrum:
    """Real bound-state energies (sorted) with sign counts."""

    spec: PotentialSpec
    real_energies: np.ndarray
    negative_count: int
    positive_count: int

    @property
    def count(self) -> int:
        return len(self.real_energies)


@dataclass(frozen=True)
class CriticalV1:
    """Result of the bisection on the first change of the real-root count.

    `merge_energy` is a diagnostic estimate: the mean of the root(s) present
    just below the critical value that have no counterpart just above it
    (two roots for an interior pair merge, one for a band-edge exit).
    """

    v1_critical: float
    merge_energy: float
    count_below: int
    count_above: int
    roots_below: np.ndarray
    roots_above: np.ndarray


@dataclass(frozen=True)
class ComplexZeroSearch:
    """Zeros of the continued M22 found in a box, with seed diagnostics."""

    zeros: tuple
    n_seeds: int
    n_converged: int
    n_failed: int


def bound_state_values(spec: PotentialSpec, energies) -> np.ndarray:
    """Vectorized bound-state secular function on (-m, m)."""
    return _kernels.bound_state_values(
        energies, spec.v0, spec.v1, spec.b, spec.q, spec.m
    )


def bound_state_function(spec: PotentialSpec, energy: float) -> float:
    """Bound-state secular function at one energy in (-m, m); real-valued,
    zero exactly at the real bound-state energies."""
    if abs(energy) >= spec.m - _EDGE_MARGIN * spec.m:
        raise BandEdgeDegeneracy(
            f"E = {energy!r} is within {_EDGE_MARGIN}*m of a band edge"
        )
    return float(bound_state_values(spec, np.array([energy]))[0])


def real_bound_states(spec: PotentialSpec, grid_n: int = 2001) -> Spectrum:
    """Scan (-m, m) for sign changes of the secular function and refine each
    bracket with a bracketing root finder to |dE| < 1e-10*m."""
    if grid_n < 500:
        raise ValueError(f"grid_n must be >= 500, got {grid_n}")
    m = spec.m
    delta = 1e-6 * m
    grid = np.linspace(-m + delta, m - delta, grid_n)
    values = bound_state_values(spec, grid)

    def f(x: float) -> float:
        return float(bound_state_values(spec, np.array([x]))[0])

    roots: list[float] = []
    finite = np.isfinite(values)
    for i in range(grid_n - 1):
        if not (finite[i] and finite[i + 1]):
            continue
        a, fa = grid[i], values[i]
        b, fb = grid[i + 1], values[i + 1]
        if fa == 0.0:
            roots.append(float(a))
            continue
        if fa * fb < 0.0:
            roots.append(float(brentq(f, a, b, xtol=1e-10 * m, rtol=8 * np.finfo(float).eps)))
    if len(values) and np.isfinite(values[-1]) and values[-1] == 0.0:
        roots.append(float(grid[-1]))

    roots.sort()
    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > _DEDUP_TOL * m:
            deduped.append(r)
    energies = np.array(deduped)
    return Spectrum(
        spec=spec,
        real_energies=energies,
        negative_count=int(np.sum(energies < 0.0)),
        positive_count=int(np.sum(energies > 0.0)),
    )


def _disappeared_roots(below: np.ndarray, above: np.ndarray) -> np.ndarray:
    """Roots present below the critical value with no counterpart above,
    via minimum-displacement assignment."""
    if len(above) == 0:
        return below
    cost = np.abs(below[None, :] - above[:, None])
    rows, cols = linear_sum_assignment(cost)
    matched = set(int(c) for c in cols)
    return np.array([r for i, r in enumerate(below) if i not in matched])


def critical_v1(
    spec: PotentialSpec,
    v1_max: float,
    tol: float = 1e-4,
    grid_n: int = 2001,
) -> CriticalV1:
    """Bisect the imaginary depth over [0, v1_max] for the first change of
    the real bound-state count. The spec's own v1 is ignored; the search
    always starts from the real well.

    Raises NoBreakingDetected when the counts at both ends agree.
    """
    m = spec.m
    if tol < 1e-6 * m:
        raise ValueError(f"tol must be >= 1e-6*m, got {tol!r}")
    if not 0.0 < v1_max:
        raise ValueError(f"v1_max must be > 0, got {v1_max!r}")

    def spectrum_at(v1: float) -> Spectrum:
        probe = PotentialSpec(v0=spec.v0, v1=v1, b=spec.b, q=spec.q, m=spec.m)
        return real_bound_states(probe, grid_n)

    lo, hi = 0.0, float(v1_max)
    spec_lo = spectrum_at(lo)
    spec_hi = spectrum_at(hi)
    if spec_lo.count == spec_hi.count:
        raise NoBreakingDetected(
            f"real-root count is {spec_lo.count} at both v1 = 0 and v1 = {v1_max}"
        )
    count0 = spec_lo.count
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        s_mid = spectrum_at(mid)
        if s_mid.count < count0:
            hi, spec_hi = mid, s_mid
        else:
            lo, spec_lo = mid, s_mid
    gone = _disappeared_roots(spec_lo.real_energies, spec_hi.real_energies)
    merge_energy = float(np.mean(gone)) if len(gone) else math.nan
    return CriticalV1(
        v1_critical=0.5 * (lo + hi),
        merge_energy=merge_energy,
        count_below=spec_lo.count,
        count_above=spec_hi.count,
        roots_below=spec_lo.real_energies,
        roots_above=spec_hi.real_energies,
    )


def _cexp(z: complex) -> complex:
    # exponent clipping: values beyond e^700 only occur for hopeless Newton
    # seeds; clipping keeps them finite so the damping can reject the step
    if z.real > 700.0:
        z = complex(700.0, z.imag)
    return cmath.exp(z)


def m22_continued(spec: PotentialSpec, z: complex) -> complex:
    """Analytic continuation of M22 to complex energy on the decaying
    (normalizable) branch k = i*sqrt(m^2 - z^2), Re sqrt >= 0.

    On the real interval (-m, m) this equals the bound-state secular
    function; its complex zeros are complex eigenvalues. Evaluated from the
    closed form with per-region continued kinematics (region III uses the
    fixed conjugate potential value, not conjugated functions, so the result
    is analytic in z).
    """
    z = complex(z)
    m = spec.m
    b = spec.b
    w = cmath.sqrt(m * m - z * z)          # k = i*w, Re w >= 0
    lam = 1j * w / (z + m)
    k2 = cmath.sqrt((z - spec.v_ii) ** 2 - m * m)
    l2_ratio = k2 / (z - spec.v_ii + m)
    k3 = cmath.sqrt((z - spec.v_iii) ** 2 - m * m)
    l3_ratio = k3 / (z - spec.v_iii + m)

    re_l = 0.5 * (l2_ratio + l3_ratio)            # continues Re Lambda
    im_l = (l2_ratio - l3_ratio) / 2j             # continues Im Lambda
    abs_l2 = l2_ratio * l3_ratio                  # continues |Lambda|^2

    p = b * (k2 - k3)
    s = b * (k2 + k3)
    d = 2.0 * b * w
    # exp(2ikb) * {cos, sin} of p and s, exponentials folded against exp(-d)
    cp = 0.5 * (_cexp(1j * p - d) + _cexp(-1j * p - d))
    sp = (_cexp(1j * p - d) - _cexp(-1j * p - d)) / 2j
    cs = 0.5 * (_cexp(1j * s - d) + _cexp(-1j * s - d))
    ss = (_cexp(1j * s - d) - _cexp(-1j * s - d)) / 2j

    half = 0.5 / (lam * abs_l2)
    return (
        im_l * im_l / abs_l2 * cp
        + re_l * re_l / abs_l2 * cs
        - im_l * sp * (lam * lam - abs_l2) * half
        - 1j * re_l * ss * (lam * lam + abs_l2) * half
    )


def _newton_zero(
    spec: PotentialSpec, z0: complex, step_tol: float, max_iter: int = 80
) -> complex | None:
    h = 1e-7 * max(1.0, spec.m)
    z = complex(z0)
    for _ in range(max_iter):
        f = m22_continued(spec, z)
        if not cmath.isfinite(f):
            return None
        df = (m22_continued(spec, z + h) - m22_continued(spec, z - h)) / (2.0 * h)
        if df == 0 or not cmath.isfinite(df):
            return None
        dz = f / df
        step = 1.0
        fz = abs(f)
        for _ in range(40):
            trial = z - step * dz
            if abs(m22_continued(spec, trial)) <= (1.0 - 0.25 * step) * fz:
                break
            step *= 0.5
        else:
            return None
        z = z - step * dz
        if abs(dz) * step < step_tol:
            return z
    return None


def complex_m22_zeros(
    spec: PotentialSpec,
    box: tuple[float, float, float, float],
    seeds: int = 100,
) -> ComplexZeroSearch:
    """Damped-Newton search for zeros of the continued M22 in a rectangle
    box = (re_min, re_max, im_min, im_max) of the complex energy plane.

    Seeds form a deterministic lattice; non-converging seeds are dropped and
    counted. Returned zeros are deduplicated and restricted to the box. For
    boxes symmetric about the real axis the nonreal zeros come in conjugate
    pairs (the continued M22 is real on the real interval (-m, m)).
    """
    re_min, re_max, im_min, im_max = box
    if seeds <= 0 or re_min >= re_max or im_min >= im_max:
        return ComplexZeroSearch(zeros=(), n_seeds=0, n_converged=0, n_failed=0)
    m = spec.m

    n_re = max(2, math.ceil(math.sqrt(seeds)))
    n_im = max(2, math.ceil(seeds / n_re))
    inset_re = 0.02 * (re_max - re_min)
    inset_im = 0.02 * (im_max - im_min)
    seed_re = np.linspace(re_min + inset_re, re_max - inset_re, n_re)
    seed_im = np.linspace(im_min + inset_im, im_max - inset_im, n_im)

    # residual scale from the seed lattice, for the accept threshold
    seed_pts = [complex(r, i) for r in seed_re for i in seed_im]
    residuals = []
    for zs in seed_pts:
        try:
            fv = abs(m22_continued(spec, zs))
        except (ZeroDivisionError, OverflowError):
            continue
        if math.isfinite(fv):
            residuals.append(fv)
    f_scale = float(np.median(residuals)) if residuals else 1.0
    accept = 1e-9 * max(1.0, f_scale)

    zeros: list[complex] = []
    n_converged = 0
    n_failed = 0
    step_tol = 1e-12 * m

    def try_seed(z0: complex) -> None:
        nonlocal n_converged, n_failed
        try:
            z = _newton_zero(spec, z0, step_tol)
        except (ZeroDivisionError, OverflowError):
            z = None
        if z is None or abs(m22_continued(spec, z)) > accept:
            n_failed += 1
            return
        n_converged += 1
        if not (re_min <= z.real <= re_max and im_min <= z.imag <= im_max):
            return
        if not any(abs(z - w) < 1e-7 * max(1.0, m) for w in zeros):
            zeros.append(z)

    for z0 in seed_pts:
        try_seed(z0)
    # polish conjugates so pairs are not lost to seed-lattice asymmetry
    for z in list(zeros):
        if abs(z.imag) > 1e-10 * m:
            try_seed(z.conjugate())

    zeros.sort(key=lambda w: (w.real, w.imag))
    return ComplexZeroSearch(
        zeros=tuple(zeros),
        n_seeds=len(seed_pts),
        n_converged=n_converged,
        n_failed=n_failed,
    )
