from pathlib import Path
from tempfile import TemporaryDirectory
from unittest.case import TestCase

from numpy import allclose, array

from ergodic_rl.exceptions import SchemaError, ShapeError
from ergodic_rl.learners import DiscretizedFractionPolicy, fraction_grid, \
    LearningCurve
from ergodic_rl.process import RngStream


class TestFractionGrid(TestCase):

    def test_default(self):

        grid = fraction_grid()
        self.assertEqual(21, grid.size)
        self.assertAlmostEqual(0.25, grid[5])
        self.assertEqual(1.0, grid[-1])

    def test_single_point(self):

        self.assertListEqual([0.0], fraction_grid(1).tolist())

    def test_invalid(self):

        self.assertRaises(ValueError, fraction_grid, 0)


class TestDiscretizedFractionPolicy(TestCase):

    def test_uniform_by_default(self):

        policy = DiscretizedFractionPolicy()
        self.assertTrue(allclose(1 / 21, policy.probabilities))
        self.assertAlmostEqual(0.5, policy.mean_alpha)

    def test_temperature(self):

        policy = DiscretizedFractionPolicy(grid=[0.0, 1.0],
                                           logits=[0.0, 1.0], temperature=0.5)
        expected = array([1.0, 7.389056]) / 8.389056
        self.assertTrue(allclose(expected, policy.probabilities))
        self.assertEqual(1.0, policy.greedy_alpha)

    def test_score_sums_to_zero(self):

        policy = DiscretizedFractionPolicy(logits=array(range(21)) / 10)
        self.assertAlmostEqual(0.0, policy.score(3).sum())

    def test_sample_fractions(self):

        policy = DiscretizedFractionPolicy(grid=[0.0, 0.5, 1.0],
                                           logits=[0.0, 50.0, 0.0])
        indices, fractions = policy.sample_fractions(
            (4, 5), RngStream(0).generator()
        )
        self.assertEqual((4, 5), indices.shape)
        self.assertTrue((fractions == 0.5).all())

    def test_invalid_grid(self):

        self.assertRaises(ValueError, DiscretizedFractionPolicy,
                          grid=[0.0, 0.5, 0.5])
        self.assertRaises(ValueError, DiscretizedFractionPolicy,
                          grid=[0.0, 1.5])
        self.assertRaises(ShapeError, DiscretizedFractionPolicy,
                          grid=[0.0, 1.0], logits=[0.0])
        self.assertRaises(ValueError, DiscretizedFractionPolicy,
                          temperature=0.0)

    def test_copy_is_independent(self):

        policy = DiscretizedFractionPolicy()
        copy = policy.copy()
        copy.logits = copy.logits + 1.0
        self.assertFalse(policy.equals(copy))


class TestLearningCurve(TestCase):

    def test_iterations_must_increase(self):

        curve = LearningCurve()
        curve.append(1, 0.5, 100.0, 0.3)
        self.assertRaises(ValueError, curve.append, 1, 0.6, 100.0, 0.3)

    def test_extra_columns(self):

        curve = LearningCurve(['growth_estimate'])
        curve.append(10, 0.5, 100.0, growth_estimate=1.01)
        self.assertListEqual(['iteration', 'objective', 'mean_final_return',
                              'mean_alpha', 'growth_estimate'],
                             list(curve.to_frame().columns))
        self.assertRaises(ValueError, curve.append, 20, 0.5, 100.0)

    def test_csv(self):

        curve = LearningCurve(['growth_estimate'])
        curve.append(10, 0.5, 100.0, 0.25, growth_estimate=1.01)
        curve.append(20, 0.75, 101.0, 0.3, growth_estimate=1.02)
        with TemporaryDirectory() as directory:
            path = Path(directory) / 'curve.csv'
            curve.write_csv(path)
            loaded = LearningCurve.read_csv(path)
        self.assertTrue(curve.equals(loaded))

    def test_csv_missing_column(self):

        with TemporaryDirectory() as directory:
            path = Path(directory) / 'curve.csv'
            path.write_text('iteration,objective\n1,0.5\n')
            self.assertRaises(SchemaError, LearningCurve.read_csv, path)
