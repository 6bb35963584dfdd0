import os
import tempfile
import unittest

import numpy as np

from src.dynamics import MapSpec
from src.observables import evaluate_dictionary, fourier_dictionary
from src.sampling import (Provenance, check_node_count, equidistant_circle_nodes, load_angle_series,
                          torus_lattice_nodes, trajectory_nodes)
from src.utils.errors import ConfigError, DimensionMismatchError

REFERENCE_MAP = MapSpec.blaschke(0.33 * np.exp(1j * np.pi / 25), 0.33 * np.exp(1j * np.pi / 25))


class TestFourierDictionary(unittest.TestCase):
    """Symmetric Fourier dictionaries"""

    def test_circle_modes(self):
        """Test 1D modes run from -nbar to nbar"""
        dictionary = fourier_dictionary(2)
        np.testing.assert_array_equal(dictionary.modes, [-2, -1, 0, 1, 2])
        self.assertEqual(dictionary.size, 5)
        self.assertEqual(dictionary.zero_index, 2)
        self.assertEqual(dictionary.index_of(-1), 1)

    def test_torus_modes_row_major(self):
        """Test 2D modes are the row-major product and pair with their negations"""
        dictionary = fourier_dictionary(2, dimension=2)
        self.assertEqual(dictionary.size, 25)
        np.testing.assert_array_equal(dictionary.modes[1], [-2, -1])
        self.assertEqual(dictionary.index_of((0, 0)), dictionary.zero_index)
        np.testing.assert_array_equal(dictionary.modes, -dictionary.modes[::-1])
        with self.assertRaises(KeyError):
            dictionary.index_of((3, 0))

    def test_modes_read_only(self):
        """Test the mode array cannot be modified"""
        dictionary = fourier_dictionary(1)
        with self.assertRaises(ValueError):
            dictionary.modes[0] = 7

    def test_invalid_dictionaries(self):
        """Test negative nbar and dimension 3"""
        with self.assertRaises(ValueError):
            fourier_dictionary(-1)
        with self.assertRaises(DimensionMismatchError):
            fourier_dictionary(1, dimension=3)

    def test_evaluation_values(self):
        """Test X[k, m] = exp(i k phi_m)"""
        dictionary = fourier_dictionary(3)
        phi = np.array([0.0, 0.4, 2.0, 5.5])
        data = evaluate_dictionary(dictionary, phi)
        self.assertEqual(data.shape, (7, 4))
        expected = np.exp(1j * np.outer(np.arange(-3, 4), phi))
        np.testing.assert_allclose(data, expected, atol=1e-14)

    def test_single_angle(self):
        """Test a scalar angle evaluates to one column"""
        dictionary = fourier_dictionary(1)
        np.testing.assert_array_equal(evaluate_dictionary(dictionary, 0.0), np.ones((3, 1)))
        column = evaluate_dictionary(dictionary, np.pi)
        self.assertEqual(column.shape, (3, 1))
        np.testing.assert_allclose(column[:, 0], [-1.0, 1.0, -1.0], atol=1e-15)

    def test_conjugation_closure_is_exact(self):
        """Test rows of opposite modes are exact conjugates"""
        rng = np.random.default_rng(11)
        for dimension, shape in ((1, (40,)), (2, (40, 2))):
            dictionary = fourier_dictionary(4, dimension)
            data = evaluate_dictionary(dictionary, rng.uniform(0.0, 2 * np.pi, size=shape))
            np.testing.assert_array_equal(data[::-1], np.conj(data))

    def test_dimension_mismatch(self):
        """Test a circle dictionary refuses torus points"""
        with self.assertRaises(DimensionMismatchError):
            evaluate_dictionary(fourier_dictionary(2), np.zeros((5, 2)))


class TestSampling(unittest.TestCase):
    """Node sets and their images"""

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.temp_dir.cleanup()

    def test_equidistant_grid(self):
        """Test grid nodes and images"""
        samples = equidistant_circle_nodes(REFERENCE_MAP, 8)
        np.testing.assert_allclose(samples.points, 2 * np.pi * np.arange(8) / 8)
        np.testing.assert_allclose(samples.images, REFERENCE_MAP.apply(samples.points))
        self.assertEqual(samples.provenance, Provenance.GRID)
        self.assertEqual(samples.counts, (8,))

    def test_grid_needs_circle_map(self):
        """Test a torus map cannot use the circle grid"""
        with self.assertRaises(DimensionMismatchError):
            equidistant_circle_nodes(MapSpec.catmap(), 10)

    def test_torus_lattice(self):
        """Test the lattice is row-major with m1 * m2 nodes"""
        samples = torus_lattice_nodes(MapSpec.catmap(-0.6 - 0.55j), 3, 4)
        self.assertEqual(samples.size, 12)
        self.assertEqual(samples.dimension, 2)
        np.testing.assert_allclose(samples.points[1], [0.0, 2 * np.pi / 4])
        np.testing.assert_allclose(samples.points[4], [2 * np.pi / 3, 0.0])
        self.assertEqual(samples.images.shape, (12, 2))

    def test_trajectory_images_are_next_points(self):
        """Test images[j] = points[j + 1] and seeded reproducibility"""
        first = trajectory_nodes(REFERENCE_MAP, burn_in=50, m=200, seed=5)
        second = trajectory_nodes(REFERENCE_MAP, burn_in=50, m=200, seed=5)
        np.testing.assert_array_equal(first.images[:-1], first.points[1:])
        np.testing.assert_array_equal(first.points, second.points)
        self.assertEqual(first.provenance, Provenance.TRAJECTORY)
        self.assertEqual(first.metadata()['seed'], 5)
        self.assertEqual(first.metadata()['burn_in'], 50)

    def test_trajectory_needs_start_or_seed(self):
        """Test trajectory sampling without start or seed is rejected"""
        with self.assertRaises(ValueError):
            trajectory_nodes(REFERENCE_MAP, m=10)

    def test_explicit_start(self):
        """Test an explicit start is recorded"""
        samples = trajectory_nodes(MapSpec.catmap(-0.6 - 0.55j), start=np.array([0.1, 0.2]), burn_in=0, m=3)
        np.testing.assert_allclose(samples.points[0], [0.1, 0.2])
        self.assertEqual(samples.metadata()['start'], [0.1, 0.2])

    def test_load_angle_series(self):
        """Test consecutive angles are paired and comments skipped"""
        path = os.path.join(self.temp_dir.name, 'series.txt')
        with open(path, 'w') as f:
            f.write("# recorded angles\n0.1\n0.2\n0.3\n")
        samples = load_angle_series(path)
        np.testing.assert_allclose(samples.points, [0.1, 0.2])
        np.testing.assert_allclose(samples.images, [0.2, 0.3])
        self.assertEqual(samples.metadata()['source'], path)

    def test_load_angle_series_errors(self):
        """Test missing and malformed files raise ConfigError"""
        with self.assertRaises(ConfigError):
            load_angle_series(os.path.join(self.temp_dir.name, 'missing.txt'))
        path = os.path.join(self.temp_dir.name, 'bad.txt')
        with open(path, 'w') as f:
            f.write("0.1\nnot-an-angle\n")
        with self.assertRaises(ConfigError):
            load_angle_series(path)

    def test_node_count_flags(self):
        """Test orthogonality and aliasing thresholds"""
        dictionary = fourier_dictionary(5)
        flags = check_node_count(dictionary, equidistant_circle_nodes(MapSpec.bernoulli(), 12))
        self.assertEqual(flags, {'orthogonal': True, 'aliased': True})
        flags = check_node_count(dictionary, equidistant_circle_nodes(MapSpec.bernoulli(), 100))
        self.assertEqual(flags, {'orthogonal': True, 'aliased': False})
        flags = check_node_count(dictionary, equidistant_circle_nodes(MapSpec.bernoulli(), 8))
        self.assertFalse(flags['orthogonal'])


if __name__ == '__main__':
    unittest.main()
