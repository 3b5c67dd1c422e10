from unittest.case import TestCase

from numpy import arange, array, eye, allclose, full

from ergodic_rl.chains import TransitionMatrix, induced_chain, \
    induced_rewards, strongly_connected_components, classify_chain, \
    stationary_distribution, stationary_reward_rate, power_iteration, \
    analyze_policy
from ergodic_rl.enums.chain_class import CHAIN_CLASS
from ergodic_rl.environments import delivery_mdp
from ergodic_rl.exceptions import NonUniqueStationary, ShapeError, \
    UnsupportedPolicy
from ergodic_rl.process import MdpSpec, PolicySpec


ABSORBING = array([
    [0.5, 0.5, 0.0],
    [0.0, 0.0, 1.0],
    [0.0, 0.0, 1.0],
])
SWAP = array([[0.0, 1.0], [1.0, 0.0]])
SKEWED = array([[0.9, 0.1], [0.5, 0.5]])


class TestInducedChain(TestCase):

    def setUp(self) -> None:

        self.k0 = array([[1.0, 0.0], [0.0, 1.0]])
        self.k1 = array([[0.2, 0.8], [0.6, 0.4]])
        self.mdp = MdpSpec(
            kernel=array([self.k0, self.k1]).transpose(1, 0, 2),
            reward=array([[[1.0, 2.0], [3.0, 4.0]],
                          [[5.0, 6.0], [7.0, 8.0]]]),
            initial_dist=[1.0, 0.0]
        )

    def test_induced_chain__deterministic(self):

        actual = induced_chain(self.mdp, PolicySpec.deterministic([0, 0]))
        self.assertTrue(allclose(eye(2), actual.rows))

    def test_induced_chain__uniform_mixes_kernels(self):

        actual = induced_chain(self.mdp, PolicySpec.uniform(2, 2))
        self.assertTrue(allclose(0.5 * self.k0 + 0.5 * self.k1, actual.rows))

    def test_induced_chain__parametric_policy(self):

        self.assertRaises(UnsupportedPolicy, induced_chain, self.mdp,
                          PolicySpec.fixed_fraction(0.5))

    def test_induced_chain__delivery_always_direct(self):

        actual = induced_chain(delivery_mdp(),
                               PolicySpec.deterministic([0, 0]))
        self.assertTrue(allclose([[0.99, 0.01], [0.0, 1.0]], actual.rows))

    def test_induced_rewards__expected_per_transition(self):

        rewards = induced_rewards(self.mdp, PolicySpec.uniform(2, 2))
        self.assertAlmostEqual((0.5 * 1.0 + 0.5 * 0.2 * 3.0) / 0.6,
                               rewards[0, 0])
        # s0 -> s1 only happens under action 1
        self.assertAlmostEqual(4.0, rewards[0, 1])


class TestStronglyConnectedComponents(TestCase):

    def test_identity(self):

        expected = [frozenset({0}), frozenset({1}), frozenset({2})]
        self.assertListEqual(expected, strongly_connected_components(eye(3)))

    def test_two_cycle(self):

        self.assertListEqual([frozenset({0, 1})],
                             strongly_connected_components(SWAP))

    def test_absorbing(self):

        expected = [frozenset({0}), frozenset({1}), frozenset({2})]
        self.assertListEqual(expected,
                             strongly_connected_components(ABSORBING))

    def test_not_square(self):

        self.assertRaises(ShapeError, strongly_connected_components,
                          array([[0.5, 0.5]]))


class TestClassifyChain(TestCase):

    def test_ergodic(self):

        report = classify_chain(full((2, 2), 0.5))
        self.assertIs(CHAIN_CLASS.ergodic_chain, report.classification)
        self.assertTrue(allclose([0.5, 0.5], report.stationary))
        self.assertListEqual([1], report.periods)

    def test_periodic(self):

        report = classify_chain(SWAP)
        self.assertIs(CHAIN_CLASS.unichain_periodic, report.classification)
        self.assertListEqual([2], report.periods)
        self.assertTrue(allclose([0.5, 0.5], report.stationary))
        self.assertTrue(report.is_periodic)

    def test_periodic__power_iteration_oscillates(self):

        trace = power_iteration(SWAP, [1.0, 0.0], 4)
        self.assertTrue(allclose([1.0, 0.0], trace[2]))
        self.assertTrue(allclose([0.0, 1.0], trace[3]))

    def test_three_cycle_period(self):

        cycle = array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=float)
        self.assertListEqual([3], classify_chain(cycle).periods)

    def test_absorbing(self):

        report = classify_chain(ABSORBING)
        self.assertIs(CHAIN_CLASS.unichain_aperiodic, report.classification)
        self.assertListEqual([frozenset({2})], report.recurrent_classes)
        self.assertEqual(frozenset({0, 1}), report.transient_states)
        self.assertListEqual([2], report.absorbing_states)
        self.assertTrue(allclose([0.0, 0.0, 1.0], report.stationary))

    def test_multichain(self):

        report = classify_chain(eye(2), rewards=eye(2))
        self.assertIs(CHAIN_CLASS.multichain, report.classification)
        self.assertIsNone(report.stationary)
        self.assertIsNone(report.rho)

    def test_rho_with_rewards(self):

        report = classify_chain(SKEWED, rewards=[[1, 1], [0, 0]])
        self.assertAlmostEqual(5 / 6, report.rho)

    def test_relabelled_states(self):

        chain = TransitionMatrix(array([
            [0.2, 0.8, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.6, 0.0, 0.4],
        ]))
        rewards = arange(16.0).reshape(4, 4)
        order = [2, 0, 3, 1]
        new_label = {old: new for new, old in enumerate(order)}
        original = classify_chain(chain, rewards=rewards)
        relabelled = classify_chain(chain.permute(order),
                                    rewards=rewards[order][:, order])
        self.assertEqual(original.classification, relabelled.classification)
        self.assertEqual(CHAIN_CLASS.unichain_aperiodic,
                         relabelled.classification)
        self.assertEqual(
            [frozenset(new_label[s] for s in c)
             for c in original.recurrent_classes],
            relabelled.recurrent_classes
        )
        self.assertEqual(original.periods, relabelled.periods)
        self.assertEqual(frozenset(new_label[s]
                                   for s in original.transient_states),
                         relabelled.transient_states)
        self.assertTrue(allclose(original.stationary[order],
                                 relabelled.stationary))
        self.assertAlmostEqual(original.rho, relabelled.rho)

    def test_relabelled_multichain(self):

        chain = TransitionMatrix(array([
            [1.0, 0.0, 0.0],
            [0.5, 0.0, 0.5],
            [0.0, 0.0, 1.0],
        ]))
        order = [1, 2, 0]
        new_label = {old: new for new, old in enumerate(order)}
        original = classify_chain(chain)
        relabelled = classify_chain(chain.permute(order))
        self.assertIs(CHAIN_CLASS.multichain, relabelled.classification)
        self.assertEqual(frozenset({0}), relabelled.transient_states)
        self.assertEqual(
            sorted(new_label[s] for s in original.absorbing_states),
            relabelled.absorbing_states
        )

    def test_analyze_policy__delivery_direct(self):

        report = analyze_policy(delivery_mdp(),
                                PolicySpec.deterministic([0, 0]))
        self.assertListEqual([1], report.absorbing_states)
        self.assertIn('absorbing states: destroyed', report.to_text())
        self.assertAlmostEqual(0.0, report.rho)

    def test_to_dict(self):

        data = classify_chain(SWAP).to_dict()
        self.assertEqual('UnichainPeriodic', data['classification'])
        self.assertListEqual([2], data['periods'])
        self.assertListEqual([], data['transient_states'])


class TestStationaryDistribution(TestCase):

    def test_doubly_stochastic(self):

        P = array([[0.2, 0.3, 0.5], [0.5, 0.2, 0.3], [0.3, 0.5, 0.2]])
        self.assertTrue(allclose(full(3, 1 / 3), stationary_distribution(P)))

    def test_skewed(self):

        self.assertTrue(allclose([5 / 6, 1 / 6],
                                 stationary_distribution(SKEWED)))

    def test_absorbing(self):

        self.assertTrue(allclose([0.0, 0.0, 1.0],
                                 stationary_distribution(ABSORBING)))

    def test_is_fixed_point(self):

        pi = stationary_distribution(SKEWED)
        self.assertTrue(allclose(pi, pi @ SKEWED))

    def test_multichain(self):

        self.assertRaises(NonUniqueStationary, stationary_distribution,
                          eye(2))


class TestStationaryRewardRate(TestCase):

    def test_constant_reward(self):

        actual = stationary_reward_rate(SKEWED, full((2, 2), 3.0),
                                        [5 / 6, 1 / 6])
        self.assertAlmostEqual(3.0, actual)

    def test_self_transition_reward(self):

        actual = stationary_reward_rate(full((2, 2), 0.5), eye(2),
                                        [0.5, 0.5])
        self.assertAlmostEqual(0.5, actual)

    def test_state_reward(self):

        actual = stationary_reward_rate(SKEWED, [[1, 1], [0, 0]],
                                        [5 / 6, 1 / 6])
        self.assertAlmostEqual(5 / 6, actual)

    def test_shape_mismatch(self):

        self.assertRaises(ShapeError, stationary_reward_rate,
                          SKEWED, eye(3), [0.5, 0.5])
        self.assertRaises(ShapeError, stationary_reward_rate,
                          SKEWED, eye(2), [1.0])
