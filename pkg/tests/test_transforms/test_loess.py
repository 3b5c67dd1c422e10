from unittest.case import TestCase

from numpy import linspace, exp, log, allclose, zeros, int64, array

from ergodic_rl.exceptions import InsufficientData
from ergodic_rl.process.trajectory import TrajectoryRecord
from ergodic_rl.transforms import LoessConfig, ScatterSet, build_scatter, \
    loess_fit


def scatter_of(returns, log_sq_rewards) -> ScatterSet:

    return ScatterSet(returns=returns, log_sq_rewards=log_sq_rewards,
                      horizon=returns.shape[0], excluded=0)


class TestBuildScatter(TestCase):

    def setUp(self) -> None:

        returns = [110.0, 121.0, 121.0] + [121.0 * 1.1 ** k
                                             for k in range(1, 11)]
        self.trajectory = TrajectoryRecord.from_returns(
            seed=0, stream_id=0, states=zeros(13, dtype=int64),
            actions=zeros(13, dtype=int64), returns=returns,
            initial_return=100.0
        )

    def test_zero_rewards_are_excluded(self):

        scatter = build_scatter(self.trajectory)
        self.assertEqual(12, scatter.n_points)
        self.assertEqual(1, scatter.excluded)
        self.assertListEqual([100.0, 110.0, 121.0],
                             scatter.returns[:3].tolist())

    def test_log_squared_rewards(self):

        scatter = build_scatter(self.trajectory)
        self.assertAlmostEqual(log(100.0), scatter.log_sq_rewards[0])
        self.assertAlmostEqual(log(121.0), scatter.log_sq_rewards[1])

    def test_too_few_points(self):

        self.assertRaises(InsufficientData, build_scatter, self.trajectory,
                          13)

    def test_short_trajectory(self):

        short = TrajectoryRecord.from_returns(
            seed=0, stream_id=0, states=zeros(3, dtype=int64),
            actions=zeros(3, dtype=int64), returns=[1.0, 2.0, 3.0],
            initial_return=0.0
        )
        self.assertRaises(InsufficientData, build_scatter, short)


class TestLoessFit(TestCase):

    def test_reproduces_a_line(self):

        returns = linspace(1.0, 100.0, 200)
        fit = loess_fit(scatter_of(returns, 2 * returns + 1),
                        LoessConfig(x_scale='linear', grid_points=50))
        self.assertEqual('linear', fit.x_scale)
        self.assertEqual(50, fit.grid.size)
        self.assertTrue(allclose(2 * fit.grid + 1, fit.y_hat))

    def test_auto_picks_log_scale_for_wide_returns(self):

        x = linspace(0.0, 10.0, 300)
        fit = loess_fit(scatter_of(exp(x), 2 * x - 1))
        self.assertEqual('log', fit.x_scale)
        self.assertTrue(allclose(2 * fit.grid_x - 1, fit.y_hat))
        self.assertTrue(allclose(exp(fit.grid_x), fit.grid))

    def test_auto_keeps_linear_scale_for_narrow_returns(self):

        returns = linspace(10.0, 20.0, 50)
        fit = loess_fit(scatter_of(returns, returns))
        self.assertEqual('linear', fit.x_scale)

    def test_robustness_ignores_an_outlier(self):

        returns = linspace(1.0, 10.0, 100)
        values = returns.copy()
        values[50] = 1000.0
        fit = loess_fit(scatter_of(returns, values),
                        LoessConfig(span=0.9, x_scale='linear',
                                    robustness_iterations=2))
        self.assertTrue(allclose(fit.grid, fit.y_hat, atol=1e-6))

    def test_window_too_small(self):

        returns = array([1.0, 2.0, 3.0, 4.0, 5.0])
        self.assertRaises(InsufficientData, loess_fit,
                          scatter_of(returns, returns))

    def test_invalid_config(self):

        self.assertRaises(ValueError, LoessConfig, span=0.0)
        self.assertRaises(ValueError, LoessConfig, degree=2)
        self.assertRaises(ValueError, LoessConfig, x_scale='sqrt')
