"""Unit tests for lattice/field_grid.py"""

# License: BSD 3-clause

import math

import numpy as np
import pytest

from qcorr.lattice import FieldGrid, QuarticPotential, default_phi_max


class TestFieldGrid:

    def test_points_and_spacing(self):
        grid = FieldGrid(n_points=5, phi_max=2.0)
        assert np.array_equal(grid.points, np.array([-2.0, -1.0, 0.0, 1.0, 2.0]))
        assert grid.spacing == 1.0
        assert grid.is_symmetric

    def test_asymmetric_bounds(self):
        grid = FieldGrid(n_points=3, phi_max=3.0, phi_min=1.0)
        assert np.array_equal(grid.points, np.array([1.0, 2.0, 3.0]))
        assert not grid.is_symmetric

    def test_points_are_read_only(self):
        grid = FieldGrid(n_points=3, phi_max=1.0)
        with pytest.raises(ValueError):
            grid.points[0] = 5.0

    @pytest.mark.parametrize("n_points", [2, 0, 3.5, True])
    def test_invalid_n_points(self, n_points):
        with pytest.raises(ValueError, match="n_points"):
            FieldGrid(n_points=n_points, phi_max=1.0)

    def test_invalid_bounds(self):
        with pytest.raises(ValueError, match="phi_max must be greater than phi_min"):
            FieldGrid(n_points=5, phi_max=1.0, phi_min=1.0)
        with pytest.raises(ValueError, match="finite"):
            FieldGrid(n_points=5, phi_max=math.inf)

    def test_with_points_keeps_range(self):
        grid = FieldGrid(n_points=5, phi_max=2.0, phi_min=-1.0).with_points(7)
        assert grid.n_points == 7
        assert (grid.phi_min, grid.phi_max) == (-1.0, 2.0)

    def test_equality_and_hash(self):
        assert FieldGrid(5, 2.0) == FieldGrid(5, 2.0, -2.0)
        assert hash(FieldGrid(5, 2.0)) == hash(FieldGrid(5, 2.0, -2.0))
        assert FieldGrid(5, 2.0) != FieldGrid(7, 2.0)


class TestDefaultPhiMax:

    def test_harmonic_truncation(self):
        potential = QuarticPotential(mu2=1.0, lam=0.0)
        phi_max = default_phi_max(potential, epsilon=0.1)
        assert math.exp(-0.1 * potential(phi_max)) == pytest.approx(1e-12, rel=1e-6)
        assert phi_max == pytest.approx(math.sqrt(2.0 * -math.log(1e-12) / 0.1), rel=1e-9)

    def test_quartic_is_tighter_than_harmonic(self):
        harmonic = default_phi_max(QuarticPotential(mu2=1.0, lam=0.0), epsilon=0.1)
        quartic = default_phi_max(QuarticPotential(mu2=1.0, lam=1.0), epsilon=0.1)
        assert quartic < harmonic

    def test_flat_potential_raises(self):
        with pytest.raises(ValueError, match="does not confine"):
            default_phi_max(QuarticPotential(mu2=0.0, lam=0.0), epsilon=0.1)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError, match="epsilon"):
            default_phi_max(QuarticPotential(), epsilon=0.0)
        with pytest.raises(ValueError, match="threshold"):
            default_phi_max(QuarticPotential(), epsilon=0.1, threshold=2.0)
