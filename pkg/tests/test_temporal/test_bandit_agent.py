from unittest.case import TestCase

from numpy import array

from ergodic_rl.environments import BanditParams
from ergodic_rl.environments.bandit import SAFE, RISK
from ergodic_rl.process import RngStream
from ergodic_rl.temporal import BanditAgent, BanditAgentConfig, \
    temporal_episode, train_preference, train_population
from ergodic_rl.temporal.bandit_agent import greedy_actions, epsilon_greedy


class TestActionSelection(TestCase):

    def test_greedy_ties_go_safe(self):

        values = array([[1.0, 1.0], [1.0, 2.0], [2.0, 1.0]])
        self.assertListEqual([SAFE, RISK, SAFE],
                             greedy_actions(values).tolist())

    def test_epsilon_greedy(self):

        values = array([[1.0, 2.0]] * 3)
        actions = epsilon_greedy(values, 0.1, array([0.5, 0.05, 0.05]),
                                 array([0.9, 0.9, 0.1]))
        self.assertListEqual([RISK, SAFE, RISK], actions.tolist())


class TestBanditAgent(TestCase):

    def test_sample_average(self):

        agent = BanditAgent()
        agent.update(RISK, 1.5)
        agent.update(RISK, 0.6)
        self.assertAlmostEqual(1.05, agent.values[RISK])
        self.assertEqual(2, agent.counts[RISK])

    def test_compounded_averages_logs(self):

        agent = BanditAgent(BanditAgentConfig(
            update_rule='temporal_compounded'
        ))
        agent.update(RISK, 1.5)
        agent.update(RISK, 0.6)
        self.assertAlmostEqual(-0.0526803, agent.values[RISK])

    def test_constant_step(self):

        agent = BanditAgent(BanditAgentConfig(step_size=0.5,
                                              initial_value=1.0))
        agent.update(SAFE, 2.0)
        self.assertEqual(1.5, agent.values[SAFE])

    def test_invalid_config(self):

        self.assertRaises(ValueError, BanditAgentConfig, epsilon=1.5)
        self.assertRaises(ValueError, BanditAgentConfig, update_rule='sarsa')
        self.assertRaises(ValueError, BanditAgentConfig, step_size=2.0)


class TestTemporalEpisode(TestCase):

    def test_greedy_safe_agent_keeps_its_return(self):

        agent = BanditAgent()
        agent.values = array([1.0, 0.5])
        final_return, log = temporal_episode(agent, BanditParams(), 10,
                                             RngStream(0), learn=False)
        self.assertEqual(1.0, final_return)
        self.assertListEqual(['safe'] * 10, log['outcome'].tolist())
        self.assertListEqual([0.0, 0.0], agent.counts.tolist())

    def test_learning_updates_every_round(self):

        agent = BanditAgent()
        final_return, log = temporal_episode(agent, BanditParams(), 25,
                                             RngStream(1))
        self.assertEqual(25, agent.counts.sum())
        self.assertListEqual(['step', 'action', 'outcome', 'factor',
                              'return'], list(log.columns))
        self.assertAlmostEqual(log['factor'].prod(), final_return)


class TestTrainPreference(TestCase):

    def setUp(self) -> None:

        self.params = BanditParams(p_loss=0.5)

    def test_one_step_agent_takes_the_risk(self):

        agent, safe_frequency = train_preference(
            BanditAgentConfig(), self.params, 40_000, 0
        )
        self.assertEqual(0.0, safe_frequency)
        self.assertGreater(agent.values[RISK], agent.values[SAFE])

    def test_compounded_agent_stays_safe(self):

        agent, safe_frequency = train_preference(
            BanditAgentConfig(update_rule='temporal_compounded'),
            self.params, 40_000, 0
        )
        self.assertEqual(1.0, safe_frequency)
        self.assertLess(agent.values[RISK], 0.0)

    def test_population_rejects_trajectory_rule(self):

        config = BanditAgentConfig(update_rule='monte_carlo_trajectory')
        self.assertRaises(ValueError, train_population, config, self.params,
                          10, RngStream(0).generator(), 2)

    def test_population_shapes(self):

        values, counts = train_population(BanditAgentConfig(), self.params,
                                          30, RngStream(0).generator(), 4)
        self.assertEqual((4, 2), values.shape)
        self.assertListEqual([30.0] * 4, counts.sum(axis=1).tolist())
