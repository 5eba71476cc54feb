import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isoperim.errors import InvalidInputError, SingularityError, UnsupportedScenarioError
from isoperim.fourier import FourierCoeffs
from isoperim.geometry import nehari_check
from isoperim.green import (
    PointMassMeasure,
    _green_superlevel_disk,
    green_disk,
    green_flux_check,
    green_level_bound_check,
    huber_measure_check,
    huber_point_check,
    huber_superlevel_check,
    measure_from_atoms,
    potential,
)
from isoperim.levelsets import distribution, radial_superlevel_radius
from isoperim.quadrature import PolarGrid, ScalarField
from isoperim.radial import bubble

ZERO = FourierCoeffs.constant(0.0)
FOUR_PI2 = 4 * np.pi**2

interior = st.tuples(st.floats(0, 0.95), st.floats(0, 2 * np.pi)).map(lambda p: p[0] * np.exp(1j * p[1]))


class TestGreen:
    def test_centred_value(self):
        assert green_disk(0.5, 0) == pytest.approx(np.log(2) / (2 * np.pi), abs=1e-15)
        assert green_disk(0.5, 0) == pytest.approx(0.110318, abs=1e-6)

    @given(interior, st.floats(0, 2 * np.pi))
    def test_boundary_zero(self, y, phi):
        assert abs(green_disk(np.exp(1j * phi), y)) <= 1e-12

    @given(interior, interior)
    def test_symmetric_and_positive(self, x, y):
        if abs(x - y) < 1e-6:
            return
        gxy, gyx = green_disk(x, y), green_disk(y, x)
        assert abs(gxy - gyx) <= 1e-14 * max(1.0, abs(gxy))
        assert gxy >= 0

    def test_pole(self):
        with pytest.raises(SingularityError):
            green_disk(0.3, 0.3)

    def test_exterior_pole(self):
        with pytest.raises(InvalidInputError):
            green_disk(0.3, 1.0)

    @pytest.mark.parametrize("y", [0, 0.3 + 0.4j, 0.9, -0.95j, -0.5 + 0.5j])
    def test_unit_flux(self, y):
        r = green_flux_check(y)
        assert abs(r.lhs - 1) <= 1e-8 and r.passed
        assert r.metadata["signed_flux"] < 0


class TestLevelBound:
    def test_centred_equality(self):
        r = green_level_bound_check(0j)
        assert abs(r.slack) <= 1e-6 and r.passed

    def test_off_centre_strict(self):
        assert green_level_bound_check(0.5).slack > 1e-6

    @pytest.mark.parametrize("c", [-1.0, 2.0])
    def test_constant_weight_keeps_equality(self, c):
        assert abs(green_level_bound_check(0j, FourierCoeffs.constant(c)).slack) <= 1e-6

    def test_random_poles(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            y = rng.uniform(0, 0.9) * np.exp(1j * rng.uniform(0, 2 * np.pi))
            r = green_level_bound_check(y, nlevels=16)
            assert r.slack >= -1e-6
            if abs(y) > 0.05:
                assert r.slack > 1e-6

    @pytest.mark.parametrize("y", [0.0, 0.3, -0.2 + 0.5j])
    def test_superlevel_disks_match_grid_distribution(self, y):
        # exact Apollonius disks against the generic node-sum distribution;
        # node sums resolve a level curve to within one radial node band
        grid = PolarGrid(128, 256)
        band = np.max(np.diff(grid.r))
        field = ScalarField(grid, green_disk(grid.points, y))
        weight = ScalarField(grid, np.ones((grid.nr, grid.ntheta)))
        profile = distribution(field, weight, 16)
        for t in (0.05, 0.1, 0.2, 0.3):
            _, radius = _green_superlevel_disk(y, np.exp(-2 * np.pi * t))
            assert abs(profile.mass_at(t)[0] - np.pi * radius**2) <= 0.5 * 2 * np.pi * radius * band

    def test_superlevel_disk_boundary_is_level(self):
        y, t = 0.4 - 0.3j, 0.15
        centre, radius = _green_superlevel_disk(y, np.exp(-2 * np.pi * t))
        edge = centre + radius * np.exp(2j * np.pi * np.arange(32) / 32)
        np.testing.assert_allclose(green_disk(edge, y), t, atol=1e-14)


class TestPotential:
    def test_centred_atom(self):
        m = PointMassMeasure.single(np.pi, 0)
        assert potential(m, 0.5) == pytest.approx(np.log(2), abs=1e-15)
        z = 0.3 * np.exp(1j * np.linspace(0, 6, 7))
        np.testing.assert_allclose(potential(m, z), -np.log(0.3), atol=1e-14)

    def test_empty(self):
        assert np.all(potential(PointMassMeasure(), np.array([0.1, 0.5j])) == 0)

    def test_symmetric_pair(self):
        m = measure_from_atoms([(1.0, 0.5, 0.0), (1.0, -0.5, 0.0)])
        x = np.array([0.1 + 0.2j, -0.7j, 0.3])
        np.testing.assert_allclose(potential(m, x), potential(m, -x), atol=1e-13)

    def test_origin_term_is_mass_two_pi_alpha0(self):
        a = PointMassMeasure(alpha0=0.25)
        b = PointMassMeasure.single(2 * np.pi * 0.25, 0)
        x = np.array([0.2, 0.5j, -0.9])
        np.testing.assert_allclose(potential(a, x), potential(b, x), atol=1e-14)
        assert a.positive_mass == pytest.approx(b.positive_mass)

    def test_at_atom(self):
        with pytest.raises(SingularityError):
            potential(PointMassMeasure.single(1.0, 0.2), 0.2)

    def test_measure_validation(self):
        with pytest.raises(InvalidInputError):
            PointMassMeasure(positive=((1.0, 1.0),))
        with pytest.raises(InvalidInputError):
            PointMassMeasure(positive=((-1.0, 0.0),))
        with pytest.raises(InvalidInputError):
            PointMassMeasure(alpha0=-1)

    def test_signed_split(self):
        m = measure_from_atoms([(1.0, 0.1, 0.0), (-0.5, 0.0, 0.2)])
        assert m.positive == ((1.0, 0.1 + 0j),) and m.negative == ((0.5, 0.2j),)


class TestHuberPoint:
    def test_centred_double_equality(self):
        r = huber_point_check(ZERO, np.pi, 0)
        for value in (r.lhs, r.metadata["middle"], r.rhs):
            assert value == pytest.approx(FOUR_PI2, rel=1e-6)

    @pytest.mark.parametrize("alpha", [0.5, 2.0, 3.0, 4.5, 6.0])
    def test_centred_value_independent_of_alpha(self, alpha):
        r = huber_point_check(ZERO, alpha, 0)
        assert r.lhs == pytest.approx(FOUR_PI2, rel=1e-10)

    def test_zero_mass_is_nehari(self):
        u = FourierCoeffs.from_modes({1: 0.3, -1: 0.3, 2: 0.1j, -2: -0.1j})
        r = huber_point_check(u, 0.0, 0.2)
        n = nehari_check(u)
        assert r.lhs == n.lhs and r.metadata["middle"] == n.lhs and r.rhs == n.rhs

    def test_off_centre_strict(self):
        r = huber_point_check(ZERO, np.pi, 0.4)
        assert r.metadata["slack_potential"] > 1e-3 and r.passed

    def test_lhs_non_increasing_in_alpha(self):
        values = [huber_point_check(ZERO, a, 0.4).lhs for a in np.linspace(0, 6, 7)]
        assert np.all(np.diff(values) <= 1e-9)

    @pytest.mark.parametrize("alpha", [2 * np.pi, 7.0, -0.1])
    def test_alpha_range(self, alpha):
        with pytest.raises(InvalidInputError):
            huber_point_check(ZERO, alpha, 0)


class TestHuberMeasure:
    def test_single_atom_matches_point(self):
        a = huber_point_check(ZERO, 2.0, 0.3j)
        b = huber_measure_check(ZERO, measure_from_atoms([(2.0, 0.0, 0.3)]))
        assert (a.lhs, a.rhs, a.slack) == (b.lhs, b.rhs, b.slack)

    def test_two_atoms(self):
        m = measure_from_atoms([(np.pi / 2, 0.3, 0.0), (np.pi / 2, -0.3, 0.0)])
        r = huber_measure_check(ZERO, m)
        assert r.metadata["slack_potential"] >= 0 and r.passed

    def test_negative_atom_increases_slack(self):
        alone = huber_measure_check(ZERO, measure_from_atoms([(np.pi, 0.0, 0.0)]))
        pair = huber_measure_check(ZERO, measure_from_atoms([(np.pi, 0.0, 0.0), (-np.pi / 2, 0.5, 0.0)]))
        assert pair.metadata["slack_potential"] > alone.metadata["slack_potential"]

    def test_origin_term_in_constant(self):
        r = huber_measure_check(ZERO, PointMassMeasure(alpha0=0.5))
        assert r.metadata["alpha"] == pytest.approx(np.pi)
        assert r.lhs == pytest.approx(FOUR_PI2, rel=1e-10)

    def test_total_mass_bound(self):
        with pytest.raises(InvalidInputError):
            huber_measure_check(ZERO, measure_from_atoms([(4.0, 0.1, 0.0), (3.0, -0.1, 0.0)]))


class TestHuberSuperlevel:
    def test_full_disk_is_nehari_equality(self):
        r = huber_superlevel_check(PointMassMeasure(), 1.0)
        assert r.lhs == pytest.approx(FOUR_PI2, rel=1e-14) and abs(r.slack) < 1e-10

    def test_bubble_half_mass(self):
        radius = radial_superlevel_radius(bubble(1.0), 2 * np.log(4 / 3))
        r = huber_superlevel_check(PointMassMeasure(), radius)
        assert radius**2 == pytest.approx(0.5, abs=1e-14)
        assert r.passed and r.lhs == pytest.approx(2 * np.pi**2, rel=1e-13)

    def test_centred_atom_sub_disk(self):
        r = huber_superlevel_check(PointMassMeasure.single(np.pi, 0), 0.5)
        # int_{|x|<1/2} |x|^-1 dx = pi and the edge length is 2 pi * 0.5 * 2^(1/2)
        assert r.lhs == pytest.approx(2 * np.pi * np.pi, rel=1e-13)
        assert r.rhs == pytest.approx((np.pi * np.sqrt(2)) ** 2, rel=1e-13)
        assert r.slack >= 0

    def test_non_radial(self):
        with pytest.raises(UnsupportedScenarioError):
            huber_superlevel_check(PointMassMeasure.single(1.0, 0.2), 0.5)
