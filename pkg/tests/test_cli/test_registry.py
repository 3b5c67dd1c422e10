from unittest.case import TestCase

from ergodic_rl.cli.experiments import ALGORITHMS
from ergodic_rl.cli.registry import Registry, ENVIRONMENTS, build_environment
from ergodic_rl.configs import FIXTURES_DIR
from ergodic_rl.environments import CoinTossProcess, AdditiveCoinToss, \
    MultiplicativeBandit
from ergodic_rl.exceptions import UnknownComponent, ConfigError
from ergodic_rl.process import MdpSpec


class TestRegistry(TestCase):

    def setUp(self) -> None:

        self.registry = Registry('widget')

        @self.registry.register('b')
        def make_b():
            return 'b'

        @self.registry.register('a')
        def make_a():
            return 'a'

    def test_names_are_sorted(self):

        self.assertListEqual(['a', 'b'], self.registry.names)
        self.assertIn('a', self.registry)

    def test_get(self):

        self.assertEqual('a', self.registry.get('a')())

    def test_unknown(self):

        with self.assertRaises(UnknownComponent) as context:
            self.registry.get('c')
        error = context.exception
        self.assertIsInstance(error, KeyError)
        self.assertEqual('widget', error.kind)
        self.assertEqual('c', error.name)
        self.assertListEqual(['a', 'b'], error.candidates)
        self.assertIn("'c'", str(error))

    def test_duplicate(self):

        self.assertRaises(ValueError, self.registry.register('a'), len)


class TestBuildEnvironment(TestCase):

    def test_registered_names(self):

        for name in ('coin_toss', 'additive_coin_toss',
                     'multiplicative_bandit', 'delivery',
                     'town_city_delivery', 'mdp_file'):
            self.assertIn(name, ENVIRONMENTS)

    def test_coin_toss(self):

        env = build_environment('coin_toss', {'p_win': 0.6})
        self.assertIsInstance(env, CoinTossProcess)
        self.assertEqual(0.6, env.params.p_win)

    def test_additive_coin_toss(self):

        self.assertIsInstance(build_environment('additive_coin_toss', {}),
                              AdditiveCoinToss)

    def test_bandit(self):

        env = build_environment('multiplicative_bandit',
                                {'initial_return': 2.0})
        self.assertIsInstance(env, MultiplicativeBandit)
        self.assertEqual(2.0, env.initial_return)

    def test_delivery_matches_fixture(self):

        from ergodic_rl.process.spec_io import load_mdp_spec
        built = build_environment('delivery', {})
        loaded = load_mdp_spec(FIXTURES_DIR / 'delivery.yaml')
        self.assertIsInstance(built, MdpSpec)
        self.assertListEqual(loaded.kernel.tolist(), built.kernel.tolist())
        self.assertListEqual(loaded.reward.tolist(), built.reward.tolist())

    def test_mdp_file(self):

        env = build_environment('mdp_file',
                                {'path': str(FIXTURES_DIR / 'ergodic.yaml')})
        self.assertEqual(2, env.n_states)

    def test_mdp_file_errors(self):

        self.assertRaises(ConfigError, build_environment, 'mdp_file', {})
        self.assertRaises(
            ConfigError, build_environment, 'mdp_file',
            {'path': str(FIXTURES_DIR / 'malformed.yaml')}
        )

    def test_invalid_params(self):

        self.assertRaises(ConfigError, build_environment, 'coin_toss',
                          {'stake_everything': True})
        self.assertRaises(ConfigError, build_environment, 'coin_toss',
                          {'loss_mult': 1.0})

    def test_unknown(self):

        self.assertRaises(UnknownComponent, build_environment, 'roulette', {})


class TestAlgorithms(TestCase):

    def test_registered_names(self):

        self.assertListEqual([
            'chain_report', 'ergodicity_gap', 'growth_q', 'preference_sweep',
            'q_learning', 'reinforce', 'rollout', 'time_indexed_preference',
            'train_preference', 'transform', 'wealth_agent'
        ], ALGORITHMS.names)
