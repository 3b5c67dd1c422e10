from unittest.case import TestCase

from numpy import array, cumsum, allclose, array_equal

from ergodic_rl.environments import CoinTossProcess, delivery_mdp
from ergodic_rl.process import MdpSpec, PolicySpec, RngStream, \
    sample_transition, rollout, ensemble_rollout


class TestSampleTransition(TestCase):

    def setUp(self) -> None:

        self.mdp = MdpSpec.markov_reward_process(
            transition=[[0.3, 0.7], [1.0, 0.0]],
            reward=[[1.0, 2.0], [3.0, 4.0]],
            initial_dist=[1.0, 0.0]
        )

    def test_sample_transition__same_stream_same_draw(self):

        expected = sample_transition(self.mdp, 0, 0, RngStream(5, 3))
        actual = sample_transition(self.mdp, 0, 0, RngStream(5, 3))
        self.assertEqual(expected, actual)

    def test_sample_transition__reward_matches_next_state(self):

        for stream_id in range(20):
            next_state, reward = sample_transition(
                self.mdp, 0, 0, RngStream(1, stream_id)
            )
            self.assertEqual(float(next_state + 1), reward)

    def test_sample_transition__frequencies(self):

        n = 4000
        hits = sum(
            sample_transition(self.mdp, 0, 0, RngStream(2, i))[0] == 1
            for i in range(n)
        )
        self.assertAlmostEqual(0.7, hits / n, delta=0.03)

    def test_sample_transition__certain_row(self):

        for stream_id in range(10):
            next_state, _ = sample_transition(
                self.mdp, 1, 0, RngStream(0, stream_id)
            )
            self.assertEqual(0, next_state)

    def test_sample_transition__index_out_of_range(self):

        self.assertRaises(IndexError, sample_transition,
                          self.mdp, 2, 0, RngStream(0))
        self.assertRaises(IndexError, sample_transition,
                          self.mdp, 0, 1, RngStream(0))


class TestRollout(TestCase):

    def setUp(self) -> None:

        self.mdp = delivery_mdp()
        self.direct = PolicySpec.deterministic([0, 0])

    def test_rollout__deterministic_for_seed(self):

        first = ensemble_rollout(self.mdp, self.direct, 200, 5, 11)
        second = ensemble_rollout(self.mdp, self.direct, 200, 5, 11)
        for a, b in zip(first, second):
            self.assertTrue(a.equals(b))

    def test_rollout__streams_are_labelled(self):

        records = ensemble_rollout(self.mdp, self.direct, 10, 3, 7)
        self.assertListEqual([0, 1, 2], [r.stream_id for r in records])
        self.assertListEqual([7, 7, 7], [r.seed for r in records])

    def test_rollout__returns_accumulate_rewards(self):

        record = rollout(self.mdp, PolicySpec.uniform(2, 2), 300,
                         RngStream(3))
        expected = self.mdp.initial_return + cumsum(record.rewards)
        self.assertTrue(allclose(expected, record.returns))

    def test_rollout__deterministic_policy_actions(self):

        record = rollout(self.mdp, self.direct, 50, RngStream(0))
        self.assertTrue((record.actions == 0).all())

    def test_rollout__destroyed_state_is_absorbing(self):

        record = rollout(self.mdp, self.direct, 2000, RngStream(4))
        destroyed = (record.states == 1).nonzero()[0]
        if destroyed.size:
            self.assertTrue((record.states[destroyed[0]:] == 1).all())
            self.assertTrue((record.rewards[destroyed[0]:] == 0).all())

    def test_rollout__zero_horizon(self):

        self.assertRaises(ValueError, rollout,
                          self.mdp, self.direct, 0, RngStream(0))

    def test_rollout__parametric_policy_on_mdp(self):

        self.assertRaises(TypeError, rollout, self.mdp,
                          PolicySpec.fixed_fraction(0.5), 10, RngStream(0))

    def test_rollout__wealth_process(self):

        process = CoinTossProcess()
        record = rollout(process, PolicySpec.fixed_fraction(0.0), 20,
                         RngStream(0))
        self.assertTrue(allclose(100.0, record.returns))

    def test_final_returns__match_ensemble_rollout(self):

        process = CoinTossProcess()
        policy = PolicySpec.fixed_fraction(1.0)
        records = process.ensemble_rollout(policy, 30, 8, 2)
        expected = array([r.final_return for r in records])
        actual = process.final_returns(policy, 30, 8, 2)
        self.assertTrue(array_equal(expected, actual))
