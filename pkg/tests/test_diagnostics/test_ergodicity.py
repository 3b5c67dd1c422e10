from dataclasses import replace
from math import sqrt
from typing import Dict, List, Tuple
from unittest.case import TestCase

from numpy import array, asarray, clip, eye, full, log

from ergodic_rl.chains import classify_chain, induced_chain, \
    induced_rewards, analyze_policy
from ergodic_rl.configs import FIXTURES_DIR
from ergodic_rl.diagnostics import ensemble_average_at, time_average, \
    time_average_ci, ergodicity_gap, ensemble_final_returns, \
    positive_growth_fraction, non_ergodicity_score
from ergodic_rl.diagnostics.ergodicity import default_burn_in
from ergodic_rl.diagnostics.statistics import normal_quantile
from ergodic_rl.enums.chain_class import CHAIN_CLASS
from ergodic_rl.environments import AdditiveCoinToss, CoinTossProcess
from ergodic_rl.exceptions import EmptyInput
from ergodic_rl.process import MdpSpec, PolicySpec, RngStream, \
    TrajectoryRecord, ensemble_rollout, rollout
from ergodic_rl.process.spec_io import load_mdp_spec


def symmetric_chain() -> MdpSpec:

    return MdpSpec.markov_reward_process(
        transition=full((2, 2), 0.5), reward=eye(2),
        initial_dist=[0.5, 0.5]
    )


def constant_record(values) -> TrajectoryRecord:

    rewards = array(values, dtype=float)
    return TrajectoryRecord(seed=0, stream_id=0,
                            states=[0] * len(values), actions=[0] * len(values),
                            rewards=rewards, returns=rewards.cumsum())


class TestEnsembleAverage(TestCase):

    def test_identical_trajectories(self):

        trajs = [constant_record([1.0, 2.0, 3.0])] * 5
        self.assertEqual((2.0, 0.0), ensemble_average_at(trajs, 1))

    def test_constant_reward_chain(self):

        mdp = MdpSpec.markov_reward_process(
            full((2, 2), 0.5), full((2, 2), 3.0), [1.0, 0.0]
        )
        trajs = ensemble_rollout(mdp, PolicySpec.uniform(2, 1), 5, 20, 0)
        for t in range(5):
            self.assertAlmostEqual(3.0, ensemble_average_at(trajs, t)[0])

    def test_symmetric_chain(self):

        trajs = ensemble_rollout(symmetric_chain(), PolicySpec.uniform(2, 1),
                                 5, 4000, 1)
        mean, ci = ensemble_average_at(trajs, 3)
        self.assertAlmostEqual(0.5, mean, delta=0.03)
        self.assertGreater(ci, 0)

    def test_empty(self):

        self.assertRaises(EmptyInput, ensemble_average_at, [], 0)

    def test_step_beyond_horizon(self):

        self.assertRaises(ValueError, ensemble_average_at,
                          [constant_record([1.0])], 1)


class TestTimeAverage(TestCase):

    def test_constant(self):

        self.assertAlmostEqual(2.5, time_average(constant_record([2.5] * 8)))

    def test_alternating(self):

        self.assertEqual(0.0, time_average(constant_record([1.0, -1.0] * 50)))

    def test_symmetric_chain(self):

        traj = rollout(symmetric_chain(), PolicySpec.uniform(2, 1), 100_000,
                       RngStream(2))
        self.assertAlmostEqual(0.5, time_average(traj), delta=0.01)


class TestErgodicityGap(TestCase):

    def test_ergodic_chain_from_stationary_start(self):

        mdp = MdpSpec.markov_reward_process(
            [[0.9, 0.1], [0.5, 0.5]], [1.0, 0.0], [5 / 6, 1 / 6]
        )
        report = ergodicity_gap(mdp, PolicySpec.uniform(2, 1), 500, 400,
                                [0, 100, 499], 3)
        self.assertLessEqual(report.gap, 2 * report.ci_halfwidth)
        self.assertLessEqual(report.strict_gap, 2 * report.strict_ci)
        self.assertAlmostEqual(5 / 6, report.time_mean, delta=0.02)

    def test_unichain_from_transient_start(self):

        mdp = load_mdp_spec(FIXTURES_DIR / 'unichain_aperiodic.yaml')
        policy = PolicySpec.uniform(3, 1)
        rho = classify_chain(induced_chain(mdp, policy),
                             rewards=induced_rewards(mdp, policy)).rho
        report = ergodicity_gap(mdp, policy, 1000, 300, [0, 999], 4)
        self.assertAlmostEqual(11 / 7, rho)
        self.assertEqual(30, report.burn_in)
        self.assertLessEqual(report.asymptotic_gap,
                             2 * report.asymptotic_ci)
        self.assertAlmostEqual(rho, report.time_mean, delta=0.02)
        # the first reward is paid from the transient start state
        self.assertFalse(report.strict_within_ci)

    def test_periodic_chain_keeps_gap(self):

        mdp = load_mdp_spec(FIXTURES_DIR / 'periodic.yaml')
        report = ergodicity_gap(mdp, PolicySpec.uniform(2, 1), 100, 50,
                                [98], 0)
        self.assertAlmostEqual(0.5, report.gap)
        self.assertFalse(report.within_ci)
        self.assertFalse(report.asymptotic_within_ci)

    def test_additive_coin_toss(self):

        report = ergodicity_gap(AdditiveCoinToss(),
                                PolicySpec.fixed_fraction(1.0), 400, 400,
                                [0, 399], 5)
        self.assertLessEqual(report.gap, 2 * report.ci_halfwidth)
        self.assertAlmostEqual(5.0, report.time_mean, delta=0.5)

    def test_frames(self):

        report = ergodicity_gap(symmetric_chain(), PolicySpec.uniform(2, 1),
                                20, 10, [19, 5], 0)
        ensemble = report.ensemble_frame()
        self.assertListEqual(['t', 'ensemble_mean', 'ci'],
                             list(ensemble.columns))
        self.assertListEqual([5, 19], ensemble['t'].tolist())
        self.assertEqual(10, len(report.time_frame()))

    def test_probe_time_out_of_range(self):

        self.assertRaises(ValueError, ergodicity_gap, symmetric_chain(),
                          PolicySpec.uniform(2, 1), 10, 5, [10], 0)

    def test_no_probe_times(self):

        self.assertRaises(EmptyInput, ergodicity_gap, symmetric_chain(),
                          PolicySpec.uniform(2, 1), 10, 5, [], 0)


class TestEnsembleGrowth(TestCase):

    def test_final_returns_match_rollout(self):

        mdp = symmetric_chain()
        policy = PolicySpec.uniform(2, 1)
        expected = [t.final_return
                    for t in ensemble_rollout(mdp, policy, 30, 6, 8)]
        actual = ensemble_final_returns(mdp, policy, 30, 6, 8)
        self.assertListEqual(expected, actual.tolist())

    def test_positive_growth_fraction(self):

        self.assertAlmostEqual(
            2 / 3, positive_growth_fraction([90.0, 110.0, 120.0], 100.0)
        )
        self.assertRaises(EmptyInput, positive_growth_fraction, [], 100.0)

    def test_coin_toss_full_stake_mostly_shrinks(self):

        finals = ensemble_final_returns(
            CoinTossProcess(), PolicySpec.fixed_fraction(1.0), 1000, 200, 0
        )
        self.assertLess(positive_growth_fraction(finals, 100.0), 0.05)

    def test_non_ergodicity_score(self):

        trajs = ensemble_rollout(CoinTossProcess(),
                                 PolicySpec.fixed_fraction(1.0), 100, 200, 0)
        self.assertGreater(non_ergodicity_score(trajs), 0.0)
        median_rate = 0.5 * log(1.5) + 0.5 * log(0.6)
        self.assertGreater(non_ergodicity_score(trajs), -median_rate / 2)

    def test_non_ergodicity_score__empty(self):

        self.assertRaises(EmptyInput, non_ergodicity_score, [])


def with_start(mdp: MdpSpec, initial_dist) -> MdpSpec:

    initial_dist = clip(asarray(initial_dist, dtype=float), 0.0, None)
    return replace(mdp, initial_dist=initial_dist / initial_dist.sum())


def ergodic_chains() -> Dict[str, MdpSpec]:

    return {
        'two_state_fixture': load_mdp_spec(FIXTURES_DIR / 'ergodic.yaml'),
        'sticky_pair': MdpSpec.markov_reward_process(
            [[0.9, 0.1], [0.5, 0.5]], [1.0, 0.0], [1.0, 0.0]
        ),
        'symmetric_pair': symmetric_chain(),
        'lazy_cycle': MdpSpec.markov_reward_process(
            [[0.5, 0.5, 0.0], [0.0, 0.5, 0.5], [0.5, 0.0, 0.5]],
            [0.0, 1.0, 3.0], [1.0, 0.0, 0.0]
        ),
        'dense_four': MdpSpec.markov_reward_process(
            [[0.1, 0.4, 0.3, 0.2],
             [0.3, 0.3, 0.2, 0.2],
             [0.25, 0.25, 0.25, 0.25],
             [0.6, 0.1, 0.1, 0.2]],
            [[1.0, -1.0, 0.0, 2.0],
             [0.5, 0.0, 3.0, -2.0],
             [-1.0, 1.0, 1.0, 0.0],
             [2.0, 0.0, -0.5, 1.5]],
            [1.0, 0.0, 0.0, 0.0]
        ),
    }


def unichain_chains() -> Dict[str, Tuple[MdpSpec, List[int]]]:
    """
    Unichains with transient states, each with five initial states that
    include the transient ones.
    """
    return {
        'transient_ladder': (MdpSpec.markov_reward_process(
            [[0.2, 0.5, 0.3, 0.0, 0.0],
             [0.0, 0.3, 0.3, 0.4, 0.0],
             [0.0, 0.0, 0.5, 0.25, 0.25],
             [0.0, 0.0, 0.0, 0.3, 0.7],
             [0.0, 0.0, 0.0, 0.6, 0.4]],
            [5.0, -2.0, 4.0, 1.0, 2.0], [1.0, 0.0, 0.0, 0.0, 0.0]
        ), [0, 1, 2, 3, 4]),
        'cycle_with_loop': (MdpSpec.markov_reward_process(
            [[0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
             [0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
             [0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
             [0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
             [0.0, 0.0, 0.5, 0.0, 0.5, 0.0],
             [0.5, 0.0, 0.0, 0.0, 0.0, 0.5]],
            [3.0, -3.0, 0.0, 1.0, 2.0, 4.0], [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]
        ), [0, 1, 2, 4, 5]),
        'recurrent_pair': (MdpSpec.markov_reward_process(
            [[0.6, 0.4, 0.0, 0.0, 0.0],
             [0.7, 0.3, 0.0, 0.0, 0.0],
             [0.5, 0.0, 0.5, 0.0, 0.0],
             [0.0, 0.0, 0.6, 0.4, 0.0],
             [0.0, 0.2, 0.0, 0.3, 0.5]],
            [1.0, -1.0, 4.0, -4.0, 5.0], [0.0, 0.0, 0.0, 0.0, 1.0]
        ), [4, 3, 2, 1, 0]),
    }


class TestErgodicChainAverages(TestCase):
    """
    On ergodic chains started from their stationary distribution the
    ensemble average at any step and the long-run time average both equal
    the stationary reward rate.
    """
    def setUp(self) -> None:

        self.se_per_ci = 1 / normal_quantile()

    def stationary_start(self, mdp: MdpSpec):

        policy = PolicySpec.uniform(mdp.n_states, 1)
        report = analyze_policy(mdp, policy)
        return with_start(mdp, report.stationary), policy, report

    def test_ensemble_averages(self):

        for name, mdp in ergodic_chains().items():
            with self.subTest(chain=name):
                mdp, policy, report = self.stationary_start(mdp)
                self.assertEqual(CHAIN_CLASS.ergodic_chain,
                                 report.classification)
                trajs = ensemble_rollout(mdp, policy, 11, 4000, 10)
                for t in (0, 1, 10):
                    mean, ci = ensemble_average_at(trajs, t)
                    self.assertLessEqual(abs(mean - report.rho),
                                         3 * ci * self.se_per_ci)

    def test_time_averages(self):

        for i, (name, mdp) in enumerate(ergodic_chains().items()):
            with self.subTest(chain=name):
                mdp, policy, report = self.stationary_start(mdp)
                traj = rollout(mdp, policy, 100_000, RngStream(20, i))
                self.assertLessEqual(
                    abs(time_average(traj) - report.rho),
                    3 * time_average_ci(traj) * self.se_per_ci
                )


class TestUnichainAverages(TestCase):
    """
    On aperiodic unichains the ensemble average after burn-in and the time
    average match the stationary reward rate from any start, transient
    states included.
    """
    def setUp(self) -> None:

        self.se_per_ci = 1 / normal_quantile()

    def test_ensemble_average_after_burn_in(self):

        for name, (mdp, _) in unichain_chains().items():
            with self.subTest(chain=name):
                policy = PolicySpec.uniform(mdp.n_states, 1)
                report = analyze_policy(mdp, policy)
                self.assertEqual(CHAIN_CLASS.unichain_aperiodic,
                                 report.classification)
                self.assertNotIn(int(mdp.initial_dist.argmax()),
                                 report.recurrent_classes[0])
                burn_in = default_burn_in(mdp)
                trajs = ensemble_rollout(mdp, policy, burn_in + 1, 4000, 30)
                mean, ci = ensemble_average_at(trajs, burn_in)
                self.assertLessEqual(abs(mean - report.rho),
                                     3 * ci * self.se_per_ci)

    def test_time_averages_agree_across_starts(self):

        for name, (mdp, starts) in unichain_chains().items():
            with self.subTest(chain=name):
                policy = PolicySpec.uniform(mdp.n_states, 1)
                rho = analyze_policy(mdp, policy).rho
                averages, errors = [], []
                for start in starts:
                    traj = rollout(
                        with_start(mdp, eye(mdp.n_states)[start]), policy,
                        100_000, RngStream(40, start)
                    )
                    averages.append(time_average(traj))
                    errors.append(time_average_ci(traj) * self.se_per_ci)
                # the first start is transient
                self.assertLessEqual(abs(averages[0] - rho), 3 * errors[0])
                self.assertLessEqual(max(averages) - min(averages),
                                     4 * sqrt(2) * max(errors))
