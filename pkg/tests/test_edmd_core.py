import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

from src.dynamics import MapSpec
from src.edmd import (assemble_edmd, build_gram_matrices, chop, galerkin_representation, least_squares_edmd,
                      node_sum, transfer_apply_inverse_branches, transfer_matrix_quadrature)
from src.observables import evaluate_dictionary, fourier_dictionary
from src.oracle import bernoulli_exact_matrices
from src.sampling import equidistant_circle_nodes, torus_lattice_nodes, trajectory_nodes
from src.spectral import eigendecompose, spectral_distance
from src.utils.config import EXACT_CHOP_TOLERANCE, settings as edmd_settings
from src.utils.errors import DimensionMismatchError, SingularDataError, SingularGramError

REFERENCE_PARAM = 0.33 * np.exp(1j * np.pi / 25)
REFERENCE_MAP = MapSpec.blaschke(REFERENCE_PARAM, REFERENCE_PARAM)


class TestGramMatrices(unittest.TestCase):
    """G, H and A = G pinv(H)"""

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 8), st.integers(0, 40), st.floats(0.0, 0.7), st.floats(-np.pi, np.pi))
    def test_grid_gram_is_reversal(self, nbar, extra, radius, phase):
        """Test H is the index reversal whenever M >= N on the grid"""
        map_spec = MapSpec.blaschke(radius * np.exp(1j * phase), 0.2j)
        dictionary = fourier_dictionary(nbar)
        samples = equidistant_circle_nodes(map_spec, dictionary.size + extra)
        _, H = build_gram_matrices(dictionary, samples)
        self.assertLessEqual(np.max(np.abs(H - dictionary.reversal())), 1e-12)

    def test_bernoulli_matrices_exact(self):
        """Test assembled doubling-map matrices equal the closed forms"""
        dictionary = fourier_dictionary(5)
        samples = equidistant_circle_nodes(MapSpec.bernoulli(), 100)
        G, H = build_gram_matrices(dictionary, samples)
        edmd = assemble_edmd(G, H)
        exact = bernoulli_exact_matrices(5, 100)
        self.assertLessEqual(np.max(np.abs(G - exact.G)), 1e-12)
        self.assertLessEqual(np.max(np.abs(H - exact.H)), 1e-12)
        self.assertLessEqual(np.max(np.abs(edmd.A - exact.A)), 1e-12)
        self.assertTrue(edmd.reversal_shortcut)

    def test_bernoulli_spectrum(self):
        """Test the doubling-map spectrum is {1} and ten zeros"""
        dictionary = fourier_dictionary(5)
        G, H = build_gram_matrices(dictionary, equidistant_circle_nodes(MapSpec.bernoulli(), 100),
                                   chop_tolerance=EXACT_CHOP_TOLERANCE)
        spectrum = eigendecompose(assemble_edmd(G, H).A)
        self.assertAlmostEqual(abs(spectrum.eigenvalues[0] - 1.0), 0.0, delta=1e-10)
        self.assertLessEqual(np.max(np.abs(spectrum.eigenvalues[1:])), 1e-10)

    def test_least_squares_equals_gram_form(self):
        """Test Y pinv(X) = G pinv(H) on grid data"""
        dictionary = fourier_dictionary(5)
        samples = equidistant_circle_nodes(REFERENCE_MAP, 100)
        G, H = build_gram_matrices(dictionary, samples, chop_tolerance=0.0)
        X = evaluate_dictionary(dictionary, samples.points)
        Y = evaluate_dictionary(dictionary, samples.images)
        self.assertLessEqual(np.max(np.abs(least_squares_edmd(X, Y) - assemble_edmd(G, H).A)), 1e-10)

    def test_least_squares_equals_gram_form_on_trajectory(self):
        """Test the equivalence also holds off the grid"""
        dictionary = fourier_dictionary(3)
        samples = trajectory_nodes(REFERENCE_MAP, burn_in=100, m=500, seed=7)
        G, H = build_gram_matrices(dictionary, samples, chop_tolerance=0.0)
        X = evaluate_dictionary(dictionary, samples.points)
        Y = evaluate_dictionary(dictionary, samples.images)
        self.assertLessEqual(np.max(np.abs(least_squares_edmd(X, Y) - assemble_edmd(G, H).A)), 1e-8)

    def test_truncated_pseudoinverse(self):
        """Test M < N truncates the rank-deficient H"""
        dictionary = fourier_dictionary(5)
        G, H = build_gram_matrices(dictionary, equidistant_circle_nodes(REFERENCE_MAP, 6))
        edmd = assemble_edmd(G, H)
        self.assertEqual(edmd.rank, 6)
        self.assertEqual(edmd.truncated, 5)
        self.assertFalse(edmd.reversal_shortcut)

    def test_singular_inputs(self):
        """Test zero matrices raise the singular errors"""
        with self.assertRaises(SingularGramError):
            assemble_edmd(np.zeros((3, 3)), np.zeros((3, 3)))
        with self.assertRaises(SingularDataError):
            least_squares_edmd(np.zeros((3, 5)), np.ones((3, 5)))

    def test_shape_checks(self):
        """Test mismatched shapes are rejected"""
        with self.assertRaises(DimensionMismatchError):
            assemble_edmd(np.eye(3), np.eye(4))
        with self.assertRaises(DimensionMismatchError):
            least_squares_edmd(np.ones((3, 5)), np.ones((3, 4)))
        samples = torus_lattice_nodes(MapSpec.catmap(), 5, 5)
        with self.assertRaises(DimensionMismatchError):
            build_gram_matrices(fourier_dictionary(2), samples)

    def test_compensated_sum_agrees(self):
        """Test Neumaier summation agrees with the ordered sum"""
        rng = np.random.default_rng(1)
        left = np.exp(1j * rng.uniform(0, 2 * np.pi, size=(4, 300)))
        right = np.exp(1j * rng.uniform(0, 2 * np.pi, size=(4, 300)))
        plain = node_sum(left, right)
        compensated = node_sum(left, right, compensated=True)
        np.testing.assert_allclose(compensated, plain, atol=1e-13)
        np.testing.assert_allclose(plain, left @ right.T / 300, atol=1e-13)

    def test_chop(self):
        """Test entries below the relative tolerance are zeroed"""
        matrix = np.array([[1.0 + 1e-17j, 1e-16], [0.5, 2.0]])
        chopped = chop(matrix, 1e-14)
        self.assertEqual(chopped[0, 0], 1.0)
        self.assertEqual(chopped[0, 1], 0.0)
        np.testing.assert_array_equal(chop(matrix, 0.0), matrix)

    def test_gram_matrices_unchopped_by_default(self):
        """Test the default build keeps quadrature round-off and the chop is opt-in"""
        self.assertEqual(edmd_settings.chop_tolerance, 0.0)
        dictionary = fourier_dictionary(5)
        samples = equidistant_circle_nodes(REFERENCE_MAP, 100)
        G, H = build_gram_matrices(dictionary, samples)
        raw_G, raw_H = build_gram_matrices(dictionary, samples, chop_tolerance=0.0)
        np.testing.assert_array_equal(G, raw_G)
        np.testing.assert_array_equal(H, raw_H)


class TestTransferMatrices(unittest.TestCase):
    """Quadrature and inverse-branch transfer matrices"""

    def test_quadrature_matches_gram(self):
        """Test the quadrature matrix is G on the same grid"""
        dictionary = fourier_dictionary(5)
        operator = transfer_matrix_quadrature(REFERENCE_MAP, dictionary, 100)
        G, _ = build_gram_matrices(dictionary, equidistant_circle_nodes(REFERENCE_MAP, 100))
        np.testing.assert_array_equal(operator.L, G)
        self.assertEqual(operator.representation, "raw")

    def test_galerkin_spectrum_equals_edmd_spectrum(self):
        """Test M[k, l] = L[-k, l] is similar to A via the index reversal"""
        dictionary = fourier_dictionary(5)
        samples = equidistant_circle_nodes(REFERENCE_MAP, 100)
        G, H = build_gram_matrices(dictionary, samples)
        galerkin = galerkin_representation(transfer_matrix_quadrature(REFERENCE_MAP, dictionary, 100))
        self.assertEqual(galerkin.representation, "galerkin")
        distance = spectral_distance(eigendecompose(assemble_edmd(G, H).A), eigendecompose(galerkin.L))
        self.assertLessEqual(distance, 1e-9)
        with self.assertRaises(ValueError):
            galerkin_representation(galerkin)

    def test_inverse_branches_match_quadrature(self):
        """Test the inverse-branch construction equals the quadrature one"""
        dictionary = fourier_dictionary(5)
        branches = transfer_apply_inverse_branches(REFERENCE_MAP, dictionary, 256)
        quadrature = galerkin_representation(transfer_matrix_quadrature(REFERENCE_MAP, dictionary, 256))
        self.assertLessEqual(np.max(np.abs(branches.L - quadrature.L)), 1e-8)

    def test_inverse_branches_need_circle_map(self):
        """Test the torus map has no inverse-branch construction here"""
        with self.assertRaises(DimensionMismatchError):
            transfer_apply_inverse_branches(MapSpec.catmap(), fourier_dictionary(1, 2), 16)

    def test_torus_quadrature_on_lattice(self):
        """Test the 2D quadrature uses the m x m lattice"""
        operator = transfer_matrix_quadrature(MapSpec.catmap(), fourier_dictionary(1, 2), 9)
        self.assertEqual(operator.nodes, (9, 9))
        self.assertEqual(operator.L.shape, (9, 9))


if __name__ == '__main__':
    unittest.main()
