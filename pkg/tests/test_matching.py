import math

import numpy as np
import pytest

from ptdirac import (
    BandEdgeDegeneracy,
    PotentialSpec,
    Region,
    SolutionCoefficients,
    matching_matrix_closed_form,
    matching_matrix_ode,
    matching_matrix_product,
    omega_matrix,
    propagate_coefficients,
    region_kinematics,
    scattering_observables,
)
from ptdirac.errors import SingularOmega
from ptdirac.limits import real_well_reference_matrix
from ptdirac.matching import _checked_inv, _raw_omega


class TestOmegaMatrix:
    @pytest.mark.parametrize("x", [-5.0, -1.3, 0.0, 2.7, 5.0])
    @pytest.mark.parametrize("region", list(Region))
    def test_det_is_minus_two_lambda(self, weak_well, x, region):
        kin = region_kinematics(weak_well, 1.7, region)
        om = omega_matrix(kin, x)
        assert om.det == pytest.approx(-2.0 * kin.lambdaj, rel=1e-12)

    def test_columns_are_plane_wave_spinors(self, weak_well):
        kin = region_kinematics(weak_well, 2.0, Region.I)
        om = omega_matrix(kin, 1.5)
        phase = np.exp(1j * kin.kj * 1.5)
        np.testing.assert_allclose(om.entries[:, 0], [phase, kin.lambdaj * phase], rtol=1e-14)
        np.testing.assert_allclose(
            om.entries[:, 1], [1 / phase, -kin.lambdaj / phase], rtol=1e-14
        )


class TestClosedForm:
    def test_free_case_is_identity(self):
        spec = PotentialSpec(v0=0.0, v1=0.0, b=5.0)
        mm = matching_matrix_closed_form(spec, 2.0)
        np.testing.assert_allclose(mm.entries, np.eye(2), atol=1e-14)

    def test_narrow_well_tends_to_identity(self):
        spec = PotentialSpec(v0=3.0, v1=0.25, b=1e-9)
        mm = matching_matrix_closed_form(spec, 2.0)
        np.testing.assert_allclose(mm.entries, np.eye(2), atol=1e-7)

    @pytest.mark.parametrize(
        "v1,energy", [(0.0, 2.5), (0.25, -1.5), (0.25, 3.0), (0.5, -1.5), (0.5, 6.2)]
    )
    def test_matches_product_oracle(self, v1, energy):
        spec = PotentialSpec(v0=3.0, v1=v1, b=5.0)
        closed = matching_matrix_closed_form(spec, energy)
        product = matching_matrix_product(spec, energy)
        scale = np.max(np.abs(product.entries))
        assert np.max(np.abs(closed.entries - product.entries)) < 1e-10 * scale

    def test_real_well_equals_textbook_matrix(self, real_well):
        # diagonals agree directly; off-diagonals carry the origin-shift phases
        energy = 2.5
        mm = matching_matrix_closed_form(real_well, energy)
        ref = real_well_reference_matrix(real_well, energy)
        k = math.sqrt(energy**2 - 1.0)
        phase = np.exp(2j * k * real_well.b)
        assert mm.m11 == pytest.approx(ref[0, 0], rel=1e-12)
        assert mm.m22 == pytest.approx(ref[1, 1], rel=1e-12)
        assert mm.m12 == pytest.approx(phase * ref[0, 1], rel=1e-12)
        assert mm.m21 == pytest.approx(ref[1, 0] / phase, rel=1e-12)

    def test_unimodular_and_conjugate_diagonal(self, rng):
        for _ in range(1000):
            spec = PotentialSpec(
                v0=rng.uniform(0.01, 5.0),
                v1=rng.uniform(0.0, 1.0),
                b=rng.uniform(0.05, 10.0),
            )
            energy = float(rng.choice((-1, 1)) * rng.uniform(1.0 + 1e-6, 10.0))
            mm = matching_matrix_closed_form(spec, energy)
            scale = max(1.0, float(np.max(np.abs(mm.entries))))
            assert abs(mm.det() - 1.0) < 1e-10 * scale * scale
            assert abs(mm.m22 - mm.m11.conjugate()) < 1e-10 * scale

    def test_offdiagonals_purely_imaginary(self, weak_well):
        for energy in (-6.0, -1.2, 1.7, 3.9):
            mm = matching_matrix_closed_form(weak_well, energy)
            scale = max(1.0, np.max(np.abs(mm.entries)))
            assert abs(mm.m12.real) < 1e-10 * scale
            assert abs(mm.m21.real) < 1e-10 * scale

    def test_band_edges_raise(self, weak_well, real_well):
        with pytest.raises(BandEdgeDegeneracy):
            matching_matrix_closed_form(weak_well, 1.0)
        with pytest.raises(BandEdgeDegeneracy):
            matching_matrix_closed_form(weak_well, 0.3)  # inside the gap
        with pytest.raises(BandEdgeDegeneracy):
            matching_matrix_closed_form(real_well, -2.0)  # shifted edge


class TestBranchIndependence:
    def test_flipping_well_branch_leaves_matrix_unchanged(self, weak_well):
        """The matrix depends on (K, Lambda) only through branch-even
        combinations: flipping the in-well square-root branch changes
        nothing."""

        def product_with_flip(spec, energy, flip):
            m = spec.m
            ks, lams = {}, {}
            for reg, v in ((Region.I, 0.0), (Region.II, spec.v_ii), (Region.III, spec.v_iii)):
                k = np.sqrt(complex((energy - v) ** 2 - m * m))
                lam = k / (energy - v + m)
                if flip and reg in (Region.II, Region.III):
                    k, lam = -k, -lam
                ks[reg], lams[reg] = k, lam
            b = spec.b
            om = _raw_omega
            mat = np.linalg.inv(om(ks[Region.I], lams[Region.I], b)) @ om(
                ks[Region.III], lams[Region.III], b
            )
            mat = mat @ np.linalg.inv(om(ks[Region.III], lams[Region.III], 0.0)) @ om(
                ks[Region.II], lams[Region.II], 0.0
            )
            mat = mat @ np.linalg.inv(om(ks[Region.II], lams[Region.II], -b)) @ om(
                ks[Region.I], lams[Region.I], -b
            )
            return mat

        for energy in (-4.4, -1.3, 2.0, 5.5):
            plain = product_with_flip(weak_well, energy, flip=False)
            flipped = product_with_flip(weak_well, energy, flip=True)
            assert np.max(np.abs(plain - flipped)) < 1e-12 * max(1.0, np.max(np.abs(plain)))


class TestODEOracle:
    @pytest.mark.parametrize(
        "v1,energy", [(0.0, 2.5), (0.5, -1.5), (0.25, 3.0)]
    )
    def test_agrees_with_closed_form(self, v1, energy):
        spec = PotentialSpec(v0=3.0, v1=v1, b=5.0)
        closed = matching_matrix_closed_form(spec, energy)
        ode = matching_matrix_ode(spec, energy, tol=1e-8)
        scale = max(1.0, np.max(np.abs(closed.entries)))
        assert np.max(np.abs(closed.entries - ode.entries)) < 1e-6 * scale

    def test_tolerance_validation(self, weak_well):
        with pytest.raises(ValueError):
            matching_matrix_ode(weak_well, 2.0, tol=1e-3)
        with pytest.raises(ValueError):
            matching_matrix_ode(weak_well, 2.0, tol=1e-13)


class TestPropagation:
    def test_free_case_identity(self):
        spec = PotentialSpec(v0=0.0, v1=0.0, b=2.0)
        out = propagate_coefficients(spec, 2.0, SolutionCoefficients(1.0, 0.0))
        assert out[Region.IV].a == pytest.approx(1.0, abs=1e-13)
        assert out[Region.IV].b == pytest.approx(0.0, abs=1e-13)

    def test_second_column_extraction(self, weak_well):
        mm = matching_matrix_closed_form(weak_well, 2.0)
        out = propagate_coefficients(weak_well, 2.0, SolutionCoefficients(0.0, 1.0))
        assert out[Region.IV].a == pytest.approx(mm.m12, rel=1e-10, abs=1e-12)
        assert out[Region.IV].b == pytest.approx(mm.m22, rel=1e-10)

    def test_scattering_boundary_closure(self, weak_well):
        """Feeding (1, R_LR) into the well must come out as (T_LR, 0)."""
        obs = scattering_observables(weak_well, 2.0)
        out = propagate_coefficients(weak_well, 2.0, SolutionCoefficients(1.0, obs.r_lr))
        assert out[Region.IV].a == pytest.approx(obs.t_lr, rel=1e-10)
        assert abs(out[Region.IV].b) < 1e-10


def test_singular_basis_is_reported():
    with pytest.raises(SingularOmega):
        _checked_inv(np.array([[1.0, 1.0], [1e-15, -1e-15]], dtype=complex), "test")
