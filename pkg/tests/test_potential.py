import math

import numpy as np
import pytest

from ptdirac import (
    BandEdgeDegeneracy,
    DegenerateParameterization,
    PotentialSpec,
    Region,
    potential_at,
    pt_conjugate_check,
    region_kinematics,
    well_parameterization,
)


class TestPotentialSpec:
    def test_defaults(self):
        spec = PotentialSpec(v0=3.0, v1=0.25, b=5.0)
        assert spec.q == -1 and spec.m == 1.0

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(v0=-1.0, v1=0.0, b=1.0),
            dict(v0=1.0, v1=-0.1, b=1.0),
            dict(v0=1.0, v1=0.0, b=0.0),
            dict(v0=1.0, v1=0.0, b=1.0, q=2),
            dict(v0=1.0, v1=0.0, b=1.0, m=0.0),
            dict(v0=float("nan"), v1=0.0, b=1.0),
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            PotentialSpec(**kwargs)

    def test_free_case_allowed(self):
        PotentialSpec(v0=0.0, v1=0.0, b=1.0)


class TestPotentialAt:
    def test_left_half_of_well(self, weak_well):
        assert potential_at(weak_well, -2.0) == pytest.approx(-3.0 + 0.25j)

    def test_right_half_of_well(self, strong_well):
        assert potential_at(strong_well, 2.0) == pytest.approx(-3.0 - 0.5j)

    def test_outside(self, weak_well):
        assert potential_at(weak_well, 10 * weak_well.b) == 0.0
        assert potential_at(weak_well, -weak_well.b - 1e-12) == 0.0

    def test_origin_belongs_to_left_half(self, weak_well):
        assert potential_at(weak_well, 0.0) == weak_well.v_ii


class TestPTConjugateCheck:
    def test_square_well(self, weak_well):
        grid = np.linspace(-8.0, 8.0, 101)  # includes 0
        assert pt_conjugate_check(weak_well, grid)

    def test_real_well(self, real_well):
        assert pt_conjugate_check(real_well, np.linspace(-6, 6, 51))

    def test_asymmetric_double_fails(self, weak_well):
        def lopsided(x):
            return (1.0 + 0.5j) if x > 0 else 0.0

        grid = np.linspace(-3.0, 3.0, 31)
        assert not pt_conjugate_check(weak_well, grid, potential=lopsided)


class TestRegionKinematics:
    def test_positive_energy_asymptotic(self, weak_well):
        kin = region_kinematics(weak_well, 2.0, Region.I)
        assert kin.kj == pytest.approx(math.sqrt(3.0))
        assert kin.lambdaj == pytest.approx(math.sqrt(3.0) / 3.0)

    def test_negative_energy_antiparticle_branch(self, weak_well):
        kin = region_kinematics(weak_well, -2.0, Region.I)
        assert kin.kj == pytest.approx(math.sqrt(3.0))
        assert kin.lambdaj == pytest.approx(-math.sqrt(3.0))

    def test_bound_branch(self, weak_well):
        kin = region_kinematics(weak_well, 0.5, Region.IV)
        assert kin.kj == pytest.approx(1j * math.sqrt(0.75))
        assert (kin.kj / 1j).real > 0

    def test_well_kinematics_frozen(self, weak_well):
        # independently cross-checked against K^2 = (E - V_II)^2 - m^2
        kin = region_kinematics(weak_well, 0.5, Region.II)
        assert kin.kj == pytest.approx(3.354925061197038 - 0.2608105945853228j, rel=1e-12)
        assert kin.lambdaj == pytest.approx(0.7464549131831633 - 0.01648819250878489j, rel=1e-12)

    @pytest.mark.parametrize("energy", [-7.3, -1.5, -0.4, 0.6, 1.2, 4.8])
    @pytest.mark.parametrize("region", list(Region))
    def test_defining_relations(self, weak_well, energy, region):
        kin = region_kinematics(weak_well, energy, region)
        m = weak_well.m
        assert abs(kin.kj**2 - ((energy - kin.vj) ** 2 - m * m)) < 1e-12 * (abs(energy) + m) ** 2
        assert abs(kin.lambdaj - kin.kj / (energy - kin.vj + m)) < 1e-13

    @pytest.mark.parametrize("energy", [-6.1, -1.7, 0.3, 2.9])
    def test_region_iii_is_conjugate(self, weak_well, energy):
        kin2 = region_kinematics(weak_well, energy, Region.II)
        kin3 = region_kinematics(weak_well, energy, Region.III)
        assert kin3.kj == kin2.kj.conjugate()
        assert kin3.lambdaj == kin2.lambdaj.conjugate()

    def test_band_edges_are_errors(self, weak_well, real_well):
        for e in (1.0, -1.0):
            with pytest.raises(BandEdgeDegeneracy):
                region_kinematics(weak_well, e, Region.I)
        # shifted edges inside a real well: E - q*v0 = +/-1 -> E = -2, -4
        for e in (-2.0, -4.0):
            with pytest.raises(BandEdgeDegeneracy):
                region_kinematics(real_well, e, Region.II)


class TestWellParameterization:
    def test_frozen_polar_values(self, weak_well):
        wp = well_parameterization(weak_well, 1.5)
        assert wp.alpha_plus == pytest.approx(5.50567888638631, rel=1e-13)
        assert wp.alpha_minus == pytest.approx(3.5089172119045497, rel=1e-13)
        assert wp.phi_plus == pytest.approx(-0.04542327942157701, rel=1e-12)
        assert wp.phi_minus == pytest.approx(-0.07130746478529032, rel=1e-12)

    @pytest.mark.parametrize("energy", [-5.0, -1.5, 0.0, 1.5, 3.3])
    def test_reproduces_defining_square_root(self, weak_well, energy):
        wp = well_parameterization(weak_well, energy)
        target = (energy - weak_well.v_ii) ** 2 - 1.0
        assert abs(wp.k_well**2 - target) <= 1e-12 * max(1.0, abs(target))
        lam = wp.k_well / (energy - weak_well.v_ii + 1.0)
        assert abs(wp.lambda_well - lam) <= 1e-12 * abs(lam)

    def test_real_well_above_barrier(self, real_well):
        # E - q*v0 > m: no phases, K and Lambda real
        wp = well_parameterization(real_well, 2.5)
        assert wp.phi_plus == 0.0 and wp.phi_minus == 0.0
        assert wp.k_well.imag == 0.0 and wp.lambda_well.imag == 0.0

    def test_inside_well_gap_is_evanescent(self):
        # |E - q*v0| < m at v1 = 0 makes K purely imaginary
        spec = PotentialSpec(v0=0.5, v1=0.0, b=1.0)
        wp = well_parameterization(spec, 0.2)
        assert abs(wp.k_well.real) < 1e-12 * abs(wp.k_well)
        assert wp.k_well.imag > 0

    def test_principal_arctan_reduction(self, weak_well):
        # whenever E - q*v0 +/- m > 0 the two-argument angle is the plain arctan
        for e in (0.5, 1.5, 4.0):
            wp = well_parameterization(weak_well, e)
            q, v0, v1, m = weak_well.q, weak_well.v0, weak_well.v1, weak_well.m
            assert e - q * v0 + m > 0 and e - q * v0 - m > 0
            assert wp.phi_plus == pytest.approx(math.atan(q * v1 / (e - q * v0 + m)), abs=1e-15)
            assert wp.phi_minus == pytest.approx(math.atan(q * v1 / (e - q * v0 - m)), abs=1e-15)

    def test_degenerate_at_shifted_edge(self, real_well):
        with pytest.raises(DegenerateParameterization):
            well_parameterization(real_well, -2.0)
