import cmath

import numpy as np
import pytest
from scipy.optimize import brentq

from ptdirac import (
    BandEdgeDegeneracy,
    NoBreakingDetected,
    PotentialSpec,
    bound_state_function,
    bound_state_values,
    complex_m22_zeros,
    critical_v1,
    m22_continued,
    real_bound_states,
)
from ptdirac.limits import real_well_bound_state_function

# roots of the secular function for the overcritical real well, frozen after
# cross-validation against the independently coded textbook quantization
REAL_WELL_ROOTS = [
    -0.891293329697,
    -0.637092151117,
    -0.373806898076,
    -0.106270067268,
    0.162974561774,
    0.431517900820,
    0.695598032422,
    0.942655872722,
]

WEAK_WELL_ROOTS = [
    -0.951748809055,
    -0.604265645935,
    -0.404511528267,
    -0.086824268342,
    0.144576702135,
    0.444159778550,
    0.683767664350,
    0.950145495339,
]

# first conjugate pair after the first real state leaves through E = -m,
# frozen from a damped-Newton search on the continued M22 at v1 = 0.28
BROKEN_PAIR = complex(-1.0090015348107875, 0.0375695454730016)

SEARCH_BOX = (-1.2, -0.3, -0.2, 0.2)


def m22_product_continuation(spec, z):
    """Independent continuation oracle: the six-factor basis-matrix product
    with per-region principal-branch kinematics at complex energy."""
    z = complex(z)
    m = spec.m
    k = 1j * cmath.sqrt(m * m - z * z)
    lam = k / (z + m)
    k2 = cmath.sqrt((z - spec.v_ii) ** 2 - m * m)
    l2 = k2 / (z - spec.v_ii + m)
    k3 = cmath.sqrt((z - spec.v_iii) ** 2 - m * m)
    l3 = k3 / (z - spec.v_iii + m)

    def om(kk, ll, x):
        ep, em = cmath.exp(1j * kk * x), cmath.exp(-1j * kk * x)
        return np.array([[ep, em], [ll * ep, -ll * em]])

    b = spec.b
    mat = np.linalg.inv(om(k, lam, b)) @ om(k3, l3, b)
    mat = mat @ np.linalg.inv(om(k3, l3, 0.0)) @ om(k2, l2, 0.0)
    mat = mat @ np.linalg.inv(om(k2, l2, -b)) @ om(k, lam, -b)
    return complex(mat[1, 1])


class TestBoundStateFunction:
    def test_finite_at_centre(self, weak_well):
        value = bound_state_function(weak_well, 0.0)
        assert np.isfinite(value)

    def test_band_edge_guard(self, weak_well):
        for e in (0.9999999999, -0.9999999999, 1.0, -1.0):
            with pytest.raises(BandEdgeDegeneracy):
                bound_state_function(weak_well, e)

    def test_matches_continued_m22_on_real_axis(self, weak_well):
        for e in np.linspace(-0.95, 0.95, 39):
            direct = bound_state_function(weak_well, float(e))
            cont = m22_continued(weak_well, complex(e))
            assert abs(cont.imag) < 1e-13
            assert abs(cont.real - direct) < 1e-12 * max(1.0, abs(direct))

    def test_no_sign_changes_at_strong_depth(self, strong_well):
        grid = np.linspace(-1 + 1e-6, 1 - 1e-6, 2001)
        values = bound_state_values(strong_well, grid)
        assert np.all(np.isfinite(values))
        assert np.all(values > 0) or np.all(values < 0)


class TestRealBoundStates:
    def test_overcritical_real_well_counts(self, real_well):
        spectrum = real_bound_states(real_well)
        assert spectrum.count == 8
        assert spectrum.negative_count == 4
        assert spectrum.positive_count == 4

    def test_real_well_frozen_roots(self, real_well):
        spectrum = real_bound_states(real_well)
        np.testing.assert_allclose(spectrum.real_energies, REAL_WELL_ROOTS, atol=1e-9)

    def test_weak_depth_keeps_all_roots(self, weak_well):
        spectrum = real_bound_states(weak_well)
        assert spectrum.count == 8
        np.testing.assert_allclose(spectrum.real_energies, WEAK_WELL_ROOTS, atol=1e-9)

    def test_strong_depth_removes_all_roots(self, strong_well):
        assert real_bound_states(strong_well).count == 0

    def test_roots_are_near_machine_zeros(self, weak_well):
        spectrum = real_bound_states(weak_well)
        for e in spectrum.real_energies:
            local = max(
                1.0,
                abs(bound_state_function(weak_well, e - 1e-4)),
                abs(bound_state_function(weak_well, e + 1e-4)),
            )
            assert abs(bound_state_function(weak_well, e)) < 1e-9 * local

    def test_real_well_agrees_with_textbook_quantization(self, real_well):
        """Roots recovered independently from the separately coded real-well
        quantization function."""
        grid = np.linspace(-1 + 1e-6, 1 - 1e-6, 2001)
        values = np.array([real_well_bound_state_function(real_well, e) for e in grid])
        roots = []
        for i in range(len(grid) - 1):
            if values[i] * values[i + 1] < 0:
                roots.append(
                    brentq(
                        lambda x: real_well_bound_state_function(real_well, x),
                        grid[i],
                        grid[i + 1],
                        xtol=1e-12,
                    )
                )
        spectrum = real_bound_states(real_well)
        np.testing.assert_allclose(spectrum.real_energies, roots, atol=1e-8)

    def test_grid_validation(self, real_well):
        with pytest.raises(ValueError):
            real_bound_states(real_well, grid_n=100)

    def test_count_monotone_in_imaginary_depth(self):
        counts = []
        for v1 in np.linspace(0.0, 0.5, 21):
            spec = PotentialSpec(v0=3.0, v1=float(v1), b=5.0)
            counts.append(real_bound_states(spec).count)
        assert counts[0] == 8 and counts[-1] == 0
        assert all(a >= b for a, b in zip(counts, counts[1:]))


class TestCriticalV1:
    def test_threshold_location(self, real_well):
        result = critical_v1(real_well, v1_max=0.5, tol=1e-3)
        assert abs(result.v1_critical - 0.272) < 0.005
        assert result.count_below == 8
        assert result.count_above == 7

    def test_first_disappearance_is_an_edge_exit(self, real_well):
        # the lowest state leaves through E = -m, so exactly one root is lost
        result = critical_v1(real_well, v1_max=0.5, tol=1e-3)
        assert len(result.roots_below) - len(result.roots_above) == 1
        assert -1.0 < result.merge_energy < -0.9

    def test_no_breaking_below_threshold(self, real_well):
        with pytest.raises(NoBreakingDetected):
            critical_v1(real_well, v1_max=0.1, tol=1e-3)

    def test_tolerance_validation(self, real_well):
        with pytest.raises(ValueError):
            critical_v1(real_well, v1_max=0.5, tol=1e-8)


class TestContinuedM22:
    @pytest.mark.parametrize(
        "z",
        [
            complex(-1.1, 0.08),
            complex(-0.5, 0.3),
            complex(0.4, -0.2),
            complex(-1.9, 0.25),
            complex(0.9, 0.01),
        ],
    )
    def test_matches_product_continuation(self, weak_well, z):
        a = m22_continued(weak_well, z)
        p = m22_product_continuation(weak_well, z)
        assert abs(a - p) < 1e-11 * max(1.0, abs(p))

    def test_schwarz_reflection(self, strong_well):
        for z in (complex(-0.7, 0.2), complex(0.3, 0.45)):
            assert m22_continued(strong_well, z.conjugate()) == pytest.approx(
                m22_continued(strong_well, z).conjugate(), rel=1e-12
            )


class TestComplexZeros:
    def test_conjugate_pair_after_breaking(self):
        spec = PotentialSpec(v0=3.0, v1=0.28, b=5.0)
        search = complex_m22_zeros(spec, SEARCH_BOX, seeds=100)
        nonreal = [z for z in search.zeros if abs(z.imag) > 1e-6]
        assert len(nonreal) >= 2
        top = min(nonreal, key=lambda z: abs(z - BROKEN_PAIR))
        assert abs(top - BROKEN_PAIR) < 1e-5
        for z in nonreal:
            assert any(abs(z.conjugate() - w) < 1e-8 for w in search.zeros)

    def test_below_breaking_all_zeros_real_and_match_roots(self, weak_well):
        search = complex_m22_zeros(weak_well, SEARCH_BOX, seeds=100)
        assert search.zeros, "real roots inside the box must be recovered"
        spectrum = real_bound_states(weak_well)
        for z in search.zeros:
            assert abs(z.imag) < 1e-8
            assert min(abs(z.real - e) for e in spectrum.real_energies) < 1e-8

    def test_empty_requests(self, weak_well):
        assert complex_m22_zeros(weak_well, SEARCH_BOX, seeds=0).zeros == ()
        assert complex_m22_zeros(weak_well, (0.5, -0.5, -0.1, 0.1), seeds=50).zeros == ()

    def test_diagnostics_counts(self, weak_well):
        search = complex_m22_zeros(weak_well, SEARCH_BOX, seeds=36)
        assert search.n_seeds >= 36
        assert search.n_converged + search.n_failed >= search.n_seeds
