from pathlib import Path
from tempfile import TemporaryDirectory
from unittest.case import TestCase

from numpy import array, allclose

from ergodic_rl.configs import FIXTURES_DIR
from ergodic_rl.enums.policy_kind import POLICY_KIND
from ergodic_rl.exceptions import ShapeError, SpecParseError
from ergodic_rl.process import MdpSpec, PolicySpec
from ergodic_rl.process.spec_io import load_mdp_spec, load_policy_spec, \
    load_yaml_with_lines, parse_mdp_spec, dump_mdp_spec


class TestMdpSpec(TestCase):

    def test_state_rewards_broadcast(self):

        mdp = MdpSpec(kernel=[[[0.5, 0.5]], [[1.0, 0.0]]],
                      reward=[1.0, 2.0], initial_dist=[1.0, 0.0])
        self.assertEqual((2, 1, 2), mdp.reward.shape)
        self.assertTrue(allclose([[1.0, 1.0]], mdp.reward[0]))

    def test_rows_must_sum_to_one(self):

        self.assertRaises(ValueError, MdpSpec,
                          kernel=[[[0.5, 0.4]], [[1.0, 0.0]]],
                          reward=[0.0, 0.0], initial_dist=[1.0, 0.0])

    def test_kernel_shape(self):

        self.assertRaises(ShapeError, MdpSpec,
                          kernel=[[0.5, 0.5], [1.0, 0.0]],
                          reward=[0.0, 0.0], initial_dist=[1.0, 0.0])

    def test_arrays_are_read_only(self):

        mdp = MdpSpec.markov_reward_process([[1.0]], [0.0], [1.0])
        with self.assertRaises(ValueError):
            mdp.kernel[0, 0, 0] = 0.5

    def test_names_default(self):

        mdp = MdpSpec.markov_reward_process([[1.0]], [0.0], [1.0])
        self.assertEqual('s0', mdp.state_name(0))
        self.assertEqual('a0', mdp.action_name(0))


class TestPolicySpec(TestCase):

    def test_deterministic_probabilities(self):

        expected = array([[0.0, 1.0], [1.0, 0.0]])
        actual = PolicySpec.deterministic([1, 0]).action_probabilities(2, 2)
        self.assertTrue(allclose(expected, actual))

    def test_deterministic_action_out_of_range(self):

        policy = PolicySpec.deterministic([2, 0])
        with self.assertRaises(ShapeError) as context:
            policy.action_probabilities(2, 2)
        self.assertIn('[0, 2)', str(context.exception))

    def test_stochastic_shape_mismatch(self):

        policy = PolicySpec.uniform(3, 2)
        self.assertRaises(ShapeError, policy.action_probabilities, 2, 2)

    def test_fraction_out_of_range(self):

        self.assertRaises(ValueError, PolicySpec.fixed_fraction, 1.5)

    def test_fraction_policy_is_not_tabular(self):

        policy = PolicySpec.fixed_fraction(0.5)
        self.assertRaises(TypeError, policy.action_probabilities, 1, 1)


class TestSpecFiles(TestCase):

    def test_load_delivery_fixture(self):

        mdp = load_mdp_spec(FIXTURES_DIR / 'delivery.yaml')
        self.assertEqual(2, mdp.n_states)
        self.assertEqual(2, mdp.n_actions)
        self.assertEqual((1,), mdp.ruin_states)
        self.assertEqual('destroyed', mdp.state_name(1))
        self.assertEqual(100.0, mdp.initial_return)
        self.assertAlmostEqual(0.01, mdp.kernel[0, 0, 1])

    def test_load_policy_fixture(self):

        policy = load_policy_spec(FIXTURES_DIR / 'always_direct.yaml')
        self.assertIs(POLICY_KIND.deterministic_tabular, policy.kind)
        self.assertListEqual([0, 0], policy.table.tolist())

    def test_malformed_yaml_has_line(self):

        with self.assertRaises(SpecParseError) as context:
            load_mdp_spec(FIXTURES_DIR / 'malformed.yaml')
        self.assertIsNotNone(context.exception.line)

    def test_bad_kernel_shape_reports_line(self):

        text = '\n'.join([
            'n_states: 2',
            'n_actions: 1',
            'kernel: [0.5, 0.5, 1.0]',
            'reward: [0.0, 1.0]',
            'initial_dist: [1.0, 0.0]',
        ])
        data, lines = load_yaml_with_lines(text)
        with self.assertRaises(SpecParseError) as context:
            parse_mdp_spec(data, lines)
        self.assertEqual(3, context.exception.line)

    def test_missing_key(self):

        data, lines = load_yaml_with_lines('n_states: 1\nn_actions: 1\n')
        self.assertRaises(SpecParseError, parse_mdp_spec, data, lines)

    def test_flat_kernel_is_accepted(self):

        text = '\n'.join([
            'n_states: 2',
            'n_actions: 1',
            'kernel: [0.5, 0.5, 1.0, 0.0]',
            'reward: [0.0, 1.0]',
            'initial_dist: [1.0, 0.0]',
        ])
        mdp = parse_mdp_spec(*load_yaml_with_lines(text))
        self.assertTrue(allclose([1.0, 0.0], mdp.kernel[1, 0]))

    def test_missing_file(self):

        self.assertRaises(SpecParseError, load_mdp_spec,
                          Path('no_such_spec.yaml'))

    def test_dump_and_load(self):

        mdp = load_mdp_spec(FIXTURES_DIR / 'delivery.yaml')
        with TemporaryDirectory() as directory:
            path = Path(directory) / 'delivery.yaml'
            dump_mdp_spec(mdp, path)
            loaded = load_mdp_spec(path)
        self.assertTrue(allclose(mdp.kernel, loaded.kernel))
        self.assertTrue(allclose(mdp.reward, loaded.reward))
        self.assertEqual(mdp.state_names, loaded.state_names)
